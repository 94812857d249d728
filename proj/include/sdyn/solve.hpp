#pragma once

// Points with coordinates in the coefficient field.

#include "sdyn/ideal.hpp"

#include <optional>
#include <vector>

namespace sdyn {

struct PointSet {
  std::vector<std::vector<FieldElem>> points;
  // False when some positive-dimensional component or irreducible factor
  // of degree > 1 could not be resolved into points over k.
  bool complete = true;
};

// Roots in k of sum coeffs[i] * x^i (distinct, sorted by string form).
// `complete` is false when a factor of degree > 1 might still hide roots.
PointSet roots_in_field(const std::vector<FieldElem>& coeffs);

// All k-points of a zero-dimensional ideal, by lex triangular solving.
PointSet rational_points(const IdealRep& ideal);

// The point when the reduced lex basis is {x_i - a_i}; nullopt otherwise.
std::optional<std::vector<FieldElem>> solve_unique(const IdealRep& ideal);

// p with variable `index` replaced by `value`, over `target` (p's variables
// minus that one).
Poly specialize(const Poly& p, std::size_t index, const FieldElem& value, const Vars& target);

} // namespace sdyn

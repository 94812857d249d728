#pragma once

// Invariant rational functions and Darboux polynomials of sigma-varieties.
//
// Over a non-autonomous field the map P -> P^sigma o phi is only
// sigma-semilinear, so unknown coefficients are written as polynomials in
// the field generators with rational coefficients (degree `coeff_degree`)
// and the resulting system is solved over Q.

#include "sdyn/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdyn {

struct SearchOptions {
  // Degree in the field generators of the coefficient ansatz; 0 selects d+1.
  unsigned coeff_degree = 0;
  // Darboux searches with more unknowns than this are skipped as incomplete.
  std::size_t max_unknowns = 10;
};

struct InvariantCheck {
  bool holds = false;
  Poly residual;  // normal form of the cross-multiplied identity
};

struct InvariantFunction {
  RatFunc lambda;
  Poly certificate;
  bool nonconstant = true;
};

struct PolynomialInvariants {
  std::vector<Poly> basis;  // reduced row echelon, pivots in grevlex order
  bool semilinear = false;  // solved through the coefficient ansatz
  unsigned coeff_degree = 0;
};

struct DarbouxPair {
  Poly p;
  Poly cofactor;
  Poly clearing;  // B = (prod den phi_i)^d
  Poly residual;  // NF(B * P^sigma o phi - C * P)
};

struct DarbouxResult {
  std::vector<DarbouxPair> pairs;
  bool complete = true;
  std::vector<std::string> notes;
};

struct RationalInvariants {
  std::vector<InvariantFunction> invariants;  // sorted by degree, then text
  bool complete = true;                       // false past the polynomial stage gaps
  std::vector<std::string> notes;
};

struct PowerEntry {
  unsigned n = 0;
  std::vector<InvariantFunction> found;
  bool complete = true;
};

struct OrthogonalityProfile {
  unsigned degree = 0;
  unsigned n_max = 0;
  std::optional<unsigned> first_hit;
  std::vector<PowerEntry> entries;
};

InvariantCheck verify_invariant(const RatFunc& lambda, const SigmaVariety& s);

// Solutions P of degree <= d (modulo I(V)) of B * P^sigma o phi == M * P,
// where B = (prod den phi_i)^d and M = multiplier (B when null).
PolynomialInvariants twisted_kernel(const SigmaVariety& s, unsigned d, const Poly* multiplier,
                                    const SearchOptions& options = {});

PolynomialInvariants find_polynomial_invariants(const SigmaVariety& s, unsigned d,
                                                const SearchOptions& options = {});

DarbouxResult find_darboux_pairs(const SigmaVariety& s, unsigned d, unsigned c, const SearchOptions& options = {});

// Residual of the Darboux identity for a given pair.
Poly darboux_residual(const SigmaVariety& s, const Poly& p, const Poly& cofactor, unsigned d);

RationalInvariants find_rational_invariants(const SigmaVariety& s, unsigned d, const SearchOptions& options = {});

OrthogonalityProfile orthogonality_profile(const SigmaVariety& s, unsigned d, unsigned n_max,
                                           const SearchOptions& options = {});

// Monomials in the field generators of total degree <= D, descending; the
// last entry is 1.
std::vector<FieldElem> generator_monomials(const DifferenceField& k, unsigned D);

// Rational rows equivalent to "sum_i row[i] u_i = 0" for rational u_i.
std::vector<std::vector<FieldElem>> split_row(const std::vector<FieldElem>& row);

// Clearing factor (prod den phi_i)^d over the carrier variables.
Poly clearing_factor(const SigmaVariety& s, unsigned d);

} // namespace sdyn

#pragma once

// Affine varieties, rational maps and sigma-varieties.

#include "sdyn/ideal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdyn {

class AffineVariety {
public:
  AffineVariety() = default;
  // Throws InvalidVariety for the unit ideal.
  explicit AffineVariety(IdealRep ideal, bool irreducible = true);
  static AffineVariety affine_space(const Vars& vars, Limits limits = {});

  const Vars& vars() const { return ideal_.vars(); }
  const IdealRep& ideal() const { return ideal_; }
  std::size_t ambient_dim() const { return vars().size(); }
  // Irreducibility is asserted by the caller, never tested.
  bool irreducible() const { return irreducible_; }

  bool contains_point(const std::vector<FieldElem>& point) const;
  std::string to_string() const;

private:
  IdealRep ideal_;
  bool irreducible_ = true;
};

class RationalMap {
public:
  RationalMap() = default;
  // Components are rebased onto the source variables. Throws
  // MapUndefinedOnX when a denominator vanishes on the source and InvalidMap
  // when the image leaves the target.
  RationalMap(AffineVariety source, AffineVariety target, std::vector<RatFunc> components);
  static RationalMap identity(const AffineVariety& v);
  // Skips the validation; for maps already known to be well formed.
  static RationalMap trusted(AffineVariety source, AffineVariety target, std::vector<RatFunc> components);

  const AffineVariety& source() const { return source_; }
  const AffineVariety& target() const { return target_; }
  const std::vector<RatFunc>& components() const { return components_; }
  // Largest numerator or denominator degree among the components.
  unsigned degree() const;

  std::string to_string() const;

private:
  AffineVariety source_, target_;
  std::vector<RatFunc> components_;
};

// a == b as functions on V(I): cross-multiplied numerators reduce to zero.
bool equal_mod(const RatFunc& a, const RatFunc& b, const IdealRep& ideal);
bool maps_equal(const RationalMap& f, const RationalMap& g);

AffineVariety sigma_transform(const AffineVariety& x, const DifferenceField& field, int power);
RationalMap sigma_transform(const RationalMap& f, const DifferenceField& field, int power);

// f ∘ g; throws CompositionUndefined when a pulled-back denominator lies in
// the ideal of g's source.
RationalMap compose(const RationalMap& f, const RationalMap& g);

// Names for a second factor whose variables must not collide with `taken`:
// colliding names get trailing primes.
Vars disjoint_names(const Vars& wanted, const Vars& taken);

// Closure of {(a, f(a))} in source x target variables.
AffineVariety graph(const RationalMap& f);
bool is_dominant(const RationalMap& f);
bool check_birational_inverse(const RationalMap& f, const RationalMap& g);

class SigmaVariety {
public:
  SigmaVariety() = default;
  // Throws InvalidMap unless phi : V -> V^sigma is dominant.
  SigmaVariety(DifferenceField field, AffineVariety v, std::vector<RatFunc> phi);

  const DifferenceField& field() const { return field_; }
  const AffineVariety& carrier() const { return v_; }
  const Vars& vars() const { return v_.vars(); }
  const RationalMap& phi() const { return phi_; }
  bool dominant() const { return dominant_; }

private:
  friend SigmaVariety sigma_variety_trusted(DifferenceField, AffineVariety, RationalMap);
  DifferenceField field_;
  AffineVariety v_;
  RationalMap phi_;
  bool dominant_ = false;
};

SigmaVariety sigma_variety_trusted(DifferenceField field, AffineVariety v, RationalMap phi);

// psi ∘ g == g^sigma ∘ phi on the source carrier.
bool is_equivariant(const RationalMap& g, const SigmaVariety& src, const SigmaVariety& dst);
// Throws MapUndefinedOnX when phi is undefined along X.
bool is_invariant_subvariety(const AffineVariety& x, const SigmaVariety& s);

// Carrier V x W with the product map; W's variables are renamed by
// disjoint_names.
SigmaVariety product(const SigmaVariety& a, const SigmaVariety& b);
SigmaVariety cartesian_power(const SigmaVariety& s, unsigned n);
// Locus of (a, sigma(a), ..., sigma^m(a)) for generic a; variables x_0..x_m.
AffineVariety prolongation(const SigmaVariety& s, unsigned m);

struct CanonicalBase {
  std::vector<FieldElem> generators;  // normalized, deduplicated
  bool stabilized = true;             // false when the orbit bound was hit
};
CanonicalBase canonical_base(const SigmaVariety& s, unsigned max_orbit_steps = 8);

} // namespace sdyn

#pragma once

#include "sdyn/poly.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace sdyn {

struct Limits {
  // S-pair reductions allowed per Groebner basis computation.
  std::size_t max_pair_reductions = 50000;
};

// Reduced Groebner basis (monic, sorted by descending leading monomial).
// Throws ResourceLimit when the pair budget is exhausted.
std::vector<Poly> groebner(const std::vector<Poly>& generators, const MonomialOrder& order,
                           const Limits& limits = {});

// Full remainder of p by `basis` (which must be a Groebner basis for the
// result to be canonical).
Poly reduce(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& order);

class IdealRep {
public:
  IdealRep() : IdealRep(Vars(), {}) {}
  IdealRep(Vars vars, std::vector<Poly> generators, Limits limits = {});
  static IdealRep zero(Vars vars, Limits limits = {}) { return IdealRep(std::move(vars), {}, limits); }

  const Vars& vars() const { return vars_; }
  const std::vector<Poly>& generators() const { return generators_; }
  const Limits& limits() const { return limits_; }

  // Cached reduced basis; safe to call concurrently.
  const std::vector<Poly>& basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  Poly normal_form(const Poly& p, const MonomialOrder& order = MonomialOrder::grevlex()) const;
  bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
  bool is_unit() const;
  bool is_zero() const;

  IdealRep embed(const Vars& target) const;
  IdealRep with_limits(Limits limits) const { return IdealRep(vars_, generators_, limits); }
  IdealRep plus(const std::vector<Poly>& more) const;

  std::string to_string(const MonomialOrder& order = MonomialOrder::grevlex()) const;

private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::pair<MonomialOrder, std::shared_ptr<const std::vector<Poly>>>> bases;
  };

  Vars vars_;
  std::vector<Poly> generators_;
  Limits limits_;
  std::shared_ptr<Cache> cache_;
};

// Equality as reduced grevlex bases.
bool same_ideal(const IdealRep& a, const IdealRep& b);
// a is contained in b.
bool ideal_subset(const IdealRep& a, const IdealRep& b);

// I ∩ k[remaining variables], remaining variables keeping their order.
IdealRep eliminate(const IdealRep& ideal, const std::vector<std::string>& drop);

// I : d^∞.
IdealRep saturate(const IdealRep& ideal, const Poly& d);

// Ideal of the Zariski closure of the image of `source` under the map with
// the given components (over source.vars()), in `target` variables.
// Throws MapUndefinedOnX when a denominator lies in the source ideal.
IdealRep image_closure(const std::vector<RatFunc>& components, const IdealRep& source, const Vars& target);

// Krull dimension read off grevlex leading monomials; -1 for the unit ideal.
int dimension(const IdealRep& ideal);

// Monomials of degree <= d not in the grevlex leading ideal, descending.
std::vector<Exponent> standard_monomials(const IdealRep& ideal, unsigned d);

// Same exponents, new variable names (positional).
Poly rename_vars(const Poly& p, const Vars& target);

// A name not in `taken`, built from `base` by appending primes.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

} // namespace sdyn

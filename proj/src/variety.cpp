#include "sdyn/variety.hpp"

#include "sdyn/errors.hpp"

#include <set>
#include <sstream>

namespace sdyn {

namespace {

Poly move_to(const Poly& p, const Vars& names, const Vars& ring) { return rename_vars(p, names).embed(ring); }

RatFunc move_to(const RatFunc& f, const Vars& names, const Vars& ring) {
  return RatFunc::make(move_to(f.num(), names, ring), move_to(f.den(), names, ring));
}

std::vector<RatFunc> on_vars(const std::vector<RatFunc>& comps, const Vars& vars) {
  std::vector<RatFunc> out;
  for (const auto& c : comps) out.push_back(c.vars() == vars ? c : c.rebase(vars));
  return out;
}

} // namespace

AffineVariety::AffineVariety(IdealRep ideal, bool irreducible) : ideal_(std::move(ideal)), irreducible_(irreducible) {
  if (!ideal_.is_zero() && ideal_.is_unit()) fail(ErrorKind::InvalidVariety, "the defining ideal is the unit ideal");
}

AffineVariety AffineVariety::affine_space(const Vars& vars, Limits limits) {
  return AffineVariety(IdealRep::zero(vars, limits));
}

bool AffineVariety::contains_point(const std::vector<FieldElem>& point) const {
  if (point.size() != vars().size()) fail(ErrorKind::ArityError, "point has the wrong number of coordinates");
  for (const auto& g : ideal_.generators())
    if (!g.evaluate(point).is_zero()) return false;
  return true;
}

std::string AffineVariety::to_string() const {
  std::ostringstream os;
  os << "V(";
  if (ideal_.is_zero()) {
    os << "0";
  } else {
    const auto& b = ideal_.basis();
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? ", " : "") << b[i].to_string();
  }
  os << ") in A^" << vars().size();
  return os.str();
}

RationalMap::RationalMap(AffineVariety source, AffineVariety target, std::vector<RatFunc> components)
    : source_(std::move(source)), target_(std::move(target)), components_(on_vars(components, source_.vars())) {
  if (components_.size() != target_.vars().size())
    fail(ErrorKind::ArityError, "map has " + std::to_string(components_.size()) + " components for a target in A^" +
                                    std::to_string(target_.vars().size()));
  for (const auto& c : components_)
    if (!c.is_polynomial() && source_.ideal().contains(c.den()))
      fail(ErrorKind::MapUndefinedOnX, "denominator " + c.den().to_string() + " vanishes on the source");
  for (const auto& h : target_.ideal().generators()) {
    RatFunc pulled = substitute(h, components_);
    if (!source_.ideal().contains(pulled.num()))
      fail(ErrorKind::InvalidMap, "image leaves the target: " + h.to_string() + " does not vanish");
  }
}

RationalMap RationalMap::identity(const AffineVariety& v) {
  std::vector<RatFunc> comps;
  for (std::size_t i = 0; i < v.vars().size(); ++i) comps.push_back(RatFunc(Poly::variable(v.vars(), i)));
  return trusted(v, v, std::move(comps));
}

RationalMap RationalMap::trusted(AffineVariety source, AffineVariety target, std::vector<RatFunc> components) {
  RationalMap m;
  m.components_ = on_vars(components, source.vars());
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  return m;
}

unsigned RationalMap::degree() const {
  unsigned d = 0;
  for (const auto& c : components_) d = std::max(d, c.total_degree());
  return d;
}

std::string RationalMap::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? ", " : "") << components_[i].to_string();
  os << ")";
  return os.str();
}

bool equal_mod(const RatFunc& a, const RatFunc& b, const IdealRep& ideal) {
  Poly diff = a.num() * b.den() - b.num() * a.den();
  return ideal.normal_form(diff).is_zero();
}

bool maps_equal(const RationalMap& f, const RationalMap& g) {
  if (f.components().size() != g.components().size()) return false;
  for (std::size_t i = 0; i < f.components().size(); ++i)
    if (!equal_mod(f.components()[i], g.components()[i], f.source().ideal())) return false;
  return true;
}

AffineVariety sigma_transform(const AffineVariety& x, const DifferenceField& field, int power) {
  if (field.is_autonomous() || power == 0) return x;
  std::vector<Poly> gens;
  for (const auto& g : x.ideal().generators()) gens.push_back(g.coeff_transform(field, power));
  return AffineVariety(IdealRep(x.vars(), std::move(gens), x.ideal().limits()), x.irreducible());
}

RationalMap sigma_transform(const RationalMap& f, const DifferenceField& field, int power) {
  if (field.is_autonomous() || power == 0) return f;
  std::vector<RatFunc> comps;
  for (const auto& c : f.components()) comps.push_back(c.coeff_transform(field, power));
  return RationalMap::trusted(sigma_transform(f.source(), field, power), sigma_transform(f.target(), field, power),
                              std::move(comps));
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  if (g.components().size() != f.source().vars().size())
    fail(ErrorKind::ArityError, "composition arity mismatch");
  std::vector<RatFunc> comps;
  for (const auto& c : f.components()) {
    RatFunc r = substitute(c, g.components());
    if (!r.is_polynomial() && g.source().ideal().contains(r.den()))
      fail(ErrorKind::CompositionUndefined, "pulled-back denominator " + r.den().to_string() + " vanishes");
    comps.push_back(std::move(r));
  }
  return RationalMap::trusted(g.source(), f.target(), std::move(comps));
}

Vars disjoint_names(const Vars& wanted, const Vars& taken) {
  std::set<std::string> used(taken.names().begin(), taken.names().end());
  std::vector<std::string> out;
  for (const auto& n : wanted.names()) {
    std::string name = fresh_name(n, used);
    used.insert(name);
    out.push_back(name);
  }
  return Vars(out);
}

AffineVariety graph(const RationalMap& f) {
  const Vars& src = f.source().vars();
  Vars tgt = disjoint_names(f.target().vars(), src);
  Vars ring = src.concat(tgt);
  std::vector<Poly> gens;
  for (const auto& g : f.source().ideal().generators()) gens.push_back(g.embed(ring));
  Poly dens(ring, FieldElem(1));
  for (std::size_t i = 0; i < f.components().size(); ++i) {
    const auto& c = f.components()[i];
    Poly den = c.den().embed(ring);
    gens.push_back(den * Poly::variable(ring, tgt[i]) - c.num().embed(ring));
    if (!c.is_polynomial()) dens = dens * den;
  }
  IdealRep ideal(ring, std::move(gens), f.source().ideal().limits());
  return AffineVariety(saturate(ideal, dens), f.source().irreducible());
}

bool is_dominant(const RationalMap& f) {
  IdealRep img = image_closure(f.components(), f.source().ideal(), f.target().vars());
  return same_ideal(img, f.target().ideal());
}

bool check_birational_inverse(const RationalMap& f, const RationalMap& g) {
  auto is_identity = [](const RationalMap& h) {
    const Vars& v = h.source().vars();
    if (h.components().size() != v.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!equal_mod(h.components()[i], RatFunc(Poly::variable(v, i)), h.source().ideal())) return false;
    return true;
  };
  return is_identity(compose(f, g)) && is_identity(compose(g, f));
}

SigmaVariety::SigmaVariety(DifferenceField field, AffineVariety v, std::vector<RatFunc> phi)
    : field_(std::move(field)), v_(std::move(v)) {
  phi_ = RationalMap(v_, sigma_transform(v_, field_, 1), std::move(phi));
  dominant_ = is_dominant(phi_);
  if (!dominant_) fail(ErrorKind::InvalidMap, "phi is not dominant onto the transformed carrier");
}

SigmaVariety sigma_variety_trusted(DifferenceField field, AffineVariety v, RationalMap phi) {
  SigmaVariety s;
  s.field_ = std::move(field);
  s.v_ = std::move(v);
  s.phi_ = std::move(phi);
  s.dominant_ = true;
  return s;
}

bool is_equivariant(const RationalMap& g, const SigmaVariety& src, const SigmaVariety& dst) {
  RationalMap lhs = compose(dst.phi(), g);
  RationalMap rhs = compose(sigma_transform(g, src.field(), 1), src.phi());
  return maps_equal(lhs, rhs);
}

bool is_invariant_subvariety(const AffineVariety& x, const SigmaVariety& s) {
  AffineVariety xv = x.vars() == s.vars() ? x : AffineVariety(x.ideal().embed(s.vars()), x.irreducible());
  if (!ideal_subset(s.carrier().ideal(), xv.ideal()))
    fail(ErrorKind::InvalidArgument, "subvariety is not contained in the carrier");
  IdealRep img = image_closure(s.phi().components(), xv.ideal(), s.vars());
  return same_ideal(img, sigma_transform(xv, s.field(), 1).ideal());
}

namespace {

// Sigma-variety on `ring` from factors placed on consecutive blocks of names.
SigmaVariety assemble(const DifferenceField& field, const Vars& ring, const std::vector<const SigmaVariety*>& factors,
                      const std::vector<Vars>& names) {
  std::vector<Poly> gens;
  std::vector<RatFunc> comps;
  bool irreducible = true;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const SigmaVariety& f = *factors[k];
    irreducible = irreducible && f.carrier().irreducible();
    for (const auto& g : f.carrier().ideal().generators()) gens.push_back(move_to(g, names[k], ring));
    for (const auto& c : f.phi().components()) comps.push_back(move_to(c, names[k], ring));
  }
  Limits limits = factors.front()->carrier().ideal().limits();
  AffineVariety v(IdealRep(ring, std::move(gens), limits), irreducible);
  RationalMap phi = RationalMap::trusted(v, sigma_transform(v, field, 1), std::move(comps));
  return sigma_variety_trusted(field, v, phi);
}

} // namespace

SigmaVariety product(const SigmaVariety& a, const SigmaVariety& b) {
  Vars bn = disjoint_names(b.vars(), a.vars());
  return assemble(a.field(), a.vars().concat(bn), {&a, &b}, {a.vars(), bn});
}

SigmaVariety cartesian_power(const SigmaVariety& s, unsigned n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "cartesian power needs n >= 1");
  if (n == 1) return s;
  std::vector<std::string> all;
  std::vector<Vars> names;
  std::vector<const SigmaVariety*> factors;
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<std::string> block;
    for (const auto& v : s.vars().names()) block.push_back(v + "_" + std::to_string(i));
    all.insert(all.end(), block.begin(), block.end());
    names.emplace_back(block);
    factors.push_back(&s);
  }
  return assemble(s.field(), Vars(all), factors, names);
}

AffineVariety prolongation(const SigmaVariety& s, unsigned m) {
  if (m == 0) return s.carrier();
  std::vector<std::string> all;
  std::vector<Vars> blocks;
  for (unsigned i = 0; i <= m; ++i) {
    std::vector<std::string> block;
    for (const auto& v : s.vars().names()) block.push_back(v + "_" + std::to_string(i));
    all.insert(all.end(), block.begin(), block.end());
    blocks.emplace_back(block);
  }
  Vars ring(all);
  std::vector<Poly> gens;
  for (const auto& g : s.carrier().ideal().generators()) gens.push_back(move_to(g, blocks[0], ring));
  Poly dens(ring, FieldElem(1));
  for (unsigned i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < s.phi().components().size(); ++j) {
      RatFunc c = move_to(s.phi().components()[j].coeff_transform(s.field(), static_cast<int>(i)), blocks[i], ring);
      gens.push_back(c.den() * Poly::variable(ring, blocks[i + 1][j]) - c.num());
      if (!c.is_polynomial()) dens = dens * c.den();
    }
  }
  IdealRep ideal(ring, std::move(gens), s.carrier().ideal().limits());
  return AffineVariety(saturate(ideal, dens), s.carrier().irreducible());
}

namespace {

// Representative of the subfield generated by c over Q: polynomials lose
// their constant term and are made monic.
std::optional<FieldElem> normalize_generator(const FieldElem& c) {
  if (c.is_rational()) return std::nullopt;
  if (!c.is_polynomial()) return c;
  MPoly p = c.num() - MPoly(c.num().constant_term());
  return FieldElem(make_monic(p));
}

} // namespace

CanonicalBase canonical_base(const SigmaVariety& s, unsigned max_orbit_steps) {
  RationalMap phi = s.phi();
  AffineVariety g = graph(phi);
  CanonicalBase out;
  std::set<std::string> seen;
  std::vector<FieldElem> frontier;
  auto add = [&](const FieldElem& c) {
    auto n = normalize_generator(c);
    if (!n) return;
    if (seen.insert(n->to_string()).second) {
      out.generators.push_back(*n);
      frontier.push_back(*n);
    }
  };
  if (!g.ideal().is_zero())
    for (const auto& p : g.ideal().basis())
      for (const auto& [e, c] : p.terms()) add(c);
  if (s.field().is_autonomous()) return out;
  for (unsigned step = 0; step < max_orbit_steps && !frontier.empty(); ++step) {
    std::vector<FieldElem> current;
    current.swap(frontier);
    for (const auto& c : current) {
      add(s.field().sigma_apply(c, 1));
      add(s.field().sigma_apply(c, -1));
    }
  }
  out.stabilized = frontier.empty();
  return out;
}

} // namespace sdyn

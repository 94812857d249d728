#include "sdyn/binding.hpp"

#include "sdyn/errors.hpp"
#include "sdyn/linalg.hpp"
#include "sdyn/solve.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sdyn {

namespace {

std::vector<std::string> slice(const Vars& v, std::size_t from, std::size_t to) {
  return {v.names().begin() + static_cast<long>(from), v.names().begin() + static_cast<long>(to)};
}

RatFunc move_to(const RatFunc& f, const Vars& names, const Vars& ring) {
  return RatFunc::make(rename_vars(f.num(), names).embed(ring), rename_vars(f.den(), names).embed(ring));
}

ParamTuple symbols_of(const std::vector<std::string>& names) {
  ParamTuple out;
  for (const auto& n : names) out.push_back(FieldElem::symbol(n));
  return out;
}

std::vector<std::string> names_of(const ParamTuple& p) {
  std::vector<std::string> out;
  for (const auto& e : p) {
    auto s = e.symbols();
    if (!e.is_polynomial() || s.size() != 1 || e.num() != MPoly::symbol(*s.begin()))
      fail(ErrorKind::InvalidArgument, "expected a tuple of symbols");
    out.push_back(*s.begin());
  }
  return out;
}

void add_symbols(std::set<std::string>& taken, const ParamTuple& p) {
  for (const auto& e : p) {
    auto s = e.symbols();
    taken.insert(s.begin(), s.end());
  }
}

void add_symbols(std::set<std::string>& taken, const std::vector<RatFunc>& fs) {
  for (const auto& f : fs) {
    auto a = f.num().coefficient_symbols(), b = f.den().coefficient_symbols();
    taken.insert(a.begin(), a.end());
    taken.insert(b.begin(), b.end());
  }
}

std::vector<std::string> fresh_names(std::size_t n, const std::string& base, std::set<std::string>& taken) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string want = n == 1 ? base : base + std::to_string(i + 1);
    out.push_back(fresh_name(want, taken));
    taken.insert(out.back());
  }
  return out;
}

// An ideal over its own variables, read at the tuple of symbols `names`.
struct Relation {
  std::vector<std::string> names;
  IdealRep ideal;
};

// Normal form of d modulo I(V) + the relations, over the ring of d's
// variables and the relation symbols.
Poly residual_mod(const Poly& d, const IdealRep& v_ideal, const std::vector<Relation>& rels) {
  std::vector<const Relation*> active;
  for (const auto& r : rels)
    if (!r.ideal.is_zero()) active.push_back(&r);
  if (active.empty()) return v_ideal.is_zero() ? d : v_ideal.normal_form(d);
  std::vector<std::string> names = d.vars().names();
  for (const auto* r : active) names.insert(names.end(), r->names.begin(), r->names.end());
  Vars ring(names);
  Poly lifted = from_mpoly(to_mpoly(d).first, ring);
  std::vector<Poly> gens;
  for (const auto& g : v_ideal.generators()) gens.push_back(g.embed(ring));
  for (const auto* r : active) {
    Vars rv(r->names);
    for (const auto& g : r->ideal.generators()) gens.push_back(rename_vars(g, rv).embed(ring));
  }
  return IdealRep(ring, gens, v_ideal.limits()).normal_form(lifted);
}

Certificate map_certificate(const std::string& name, const std::vector<RatFunc>& lhs, const std::vector<RatFunc>& rhs,
                            const IdealRep& v_ideal, const std::vector<Relation>& rels = {}) {
  Certificate c{name, true, {}};
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    Poly d = lhs[i].num() * rhs[i].den() - rhs[i].num() * lhs[i].den();
    Poly r = residual_mod(d, v_ideal, rels);
    c.ok = c.ok && r.is_zero();
    c.residuals.push_back(r.to_string());
  }
  return c;
}

Certificate tuple_certificate(const std::string& name, const ParamTuple& a, const ParamTuple& b,
                              const std::vector<Relation>& rels = {}) {
  Certificate c{name, a.size() == b.size(), {}};
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    Poly r = residual_mod(Poly(Vars(), a[i] - b[i]), IdealRep::zero(Vars()), rels);
    c.ok = c.ok && r.is_zero();
    c.residuals.push_back(r.to_string());
  }
  return c;
}

Certificate merge(const std::string& name, const std::vector<Certificate>& parts) {
  Certificate c{name, true, {}};
  for (const auto& p : parts) {
    c.ok = c.ok && p.ok;
    c.residuals.insert(c.residuals.end(), p.residuals.begin(), p.residuals.end());
  }
  return c;
}

Vars fibre_vars(const Trivialization& t) { return Vars(slice(t.y.vars(), 0, t.fibre_dim())); }

// The first `count` components of m with the source variables past `keep`
// replaced by e; the kept ones become the variables `out`.
std::vector<RatFunc> fibre_map(const RationalMap& m, std::size_t keep, std::size_t count, const ParamTuple& e,
                               const Vars& out, const IdealRep& domain) {
  std::vector<RatFunc> images;
  for (std::size_t i = 0; i < keep; ++i) images.push_back(RatFunc(Poly::variable(out, i)));
  for (const auto& c : e) images.push_back(RatFunc(out, c));
  std::vector<RatFunc> comps;
  for (std::size_t i = 0; i < count; ++i) {
    try {
      RatFunc r = substitute(m.components()[i], images);
      if (!r.is_polynomial() && !domain.is_zero() && domain.contains(r.den())) fail(ErrorKind::ZeroDenominator, "");
      comps.push_back(std::move(r));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ZeroDenominator && err.kind() != ErrorKind::CompositionUndefined) throw;
      fail(ErrorKind::FibreUndefined, "the family is undefined at the parameter");
    }
  }
  return comps;
}

std::vector<RatFunc> g_fibre(const Trivialization& t, const ParamTuple& e, int power) {
  if (e.size() != t.dim_z()) fail(ErrorKind::ArityError, "parameter has the wrong length");
  const DifferenceField& k = t.s.field();
  return fibre_map(sigma_transform(t.g, k, power), t.dim_v(), t.fibre_dim(), e, t.s.vars(),
                   sigma_transform(t.s.carrier(), k, power).ideal());
}

std::vector<RatFunc> f_fibre(const Trivialization& t, const ParamTuple& e, int power) {
  if (e.size() != t.dim_z()) fail(ErrorKind::ArityError, "parameter has the wrong length");
  return fibre_map(sigma_transform(t.f, t.s.field(), power), t.fibre_dim(), t.dim_v(), e, fibre_vars(t),
                   IdealRep::zero(fibre_vars(t)));
}

IdealRep fibre_ideal(const Trivialization& t, const ParamTuple& e, int power) {
  Vars out = fibre_vars(t);
  std::vector<RatFunc> images;
  for (std::size_t i = 0; i < t.fibre_dim(); ++i) images.push_back(RatFunc(Poly::variable(out, i)));
  for (const auto& c : e) images.push_back(RatFunc(out, c));
  std::vector<Poly> gens;
  for (const auto& g : sigma_transform(t.y, t.s.field(), power).ideal().generators())
    gens.push_back(substitute(g, images).num());
  return IdealRep(out, gens, t.y.ideal().limits());
}

std::vector<RatFunc> compose_comps(const std::vector<RatFunc>& outer, const std::vector<RatFunc>& inner,
                                   const IdealRep& domain) {
  std::vector<RatFunc> out;
  for (const auto& c : outer) {
    RatFunc r = substitute(c, inner);
    if (!r.is_polynomial() && !domain.is_zero() && domain.contains(r.den()))
      fail(ErrorKind::CompositionUndefined, "pulled-back denominator " + r.den().to_string() + " vanishes");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RatFunc> identity_comps(const Vars& v) {
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(RatFunc(Poly::variable(v, i)));
  return out;
}

IdealRep v_ideal(const Trivialization& t, int power) {
  return sigma_transform(t.s.carrier(), t.s.field(), power).ideal();
}

std::vector<Poly> relations_at(const IdealRep& ideal, const std::vector<std::string>& names) {
  Vars v(names);
  std::vector<Poly> out;
  for (const auto& g : ideal.generators()) out.push_back(rename_vars(g, v));
  return out;
}

IdealRep z_ideal(const Trivialization& t, int power) {
  return sigma_transform(t.z.carrier(), t.s.field(), power).ideal();
}

// The v with f_v o g_u == theta on V.
ParamTuple transport_theta(const Trivialization& t, const std::vector<RatFunc>& theta, const ParamTuple& u, int power) {
  std::set<std::string> taken = reserved_names(t);
  add_symbols(taken, u);
  add_symbols(taken, theta);
  auto vn = fresh_names(t.dim_z(), "v", taken);
  auto lhs = compose_comps(f_fibre(t, symbols_of(vn), power), g_fibre(t, u, power), IdealRep::zero(t.s.vars()));
  std::vector<std::pair<RatFunc, RatFunc>> ids;
  for (std::size_t i = 0; i < lhs.size(); ++i) ids.emplace_back(lhs[i], theta[i]);
  auto sol = solve_match(ids, v_ideal(t, power), vn, relations_at(z_ideal(t, power), vn));
  if (!sol) fail(ErrorKind::NotInH0, "no parameter transports the generic point");
  return *sol;
}

// p as num/den over Q[variables, symbols] with common factors removed.
std::pair<MPoly, MPoly> flat(const RatFunc& a) {
  auto [n1, c1] = to_mpoly(a.num());
  auto [n2, c2] = to_mpoly(a.den());
  MPoly n = n1 * c2, d = n2 * c1;
  MPoly g = gcd(n, d);
  if (!g.is_constant()) {
    n = *exact_divide(n, g);
    d = *exact_divide(d, g);
  }
  return {n, d};
}

std::vector<Exponent> descending(const Poly& p) {
  std::vector<Exponent> es;
  for (const auto& [e, c] : p.terms()) es.push_back(e);
  auto order = MonomialOrder::grevlex();
  std::sort(es.begin(), es.end(), [&](const Exponent& a, const Exponent& b) { return order.compare(a, b) > 0; });
  return es;
}

std::map<std::string, FieldElem> binding_map(const std::vector<std::string>& names, const ParamTuple& values) {
  std::map<std::string, FieldElem> m;
  for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], values[i]);
  return m;
}

ParamTuple apply_map(const ParamTuple& f, const std::map<std::string, FieldElem>& m) {
  ParamTuple out;
  for (const auto& e : f) out.push_back(e.substitute(m));
  return out;
}

std::vector<RatFunc> instantiate(const GroupPresentation& p, const ParamTuple& a, int power) {
  auto m = binding_map(p.w.names(), a);
  std::vector<RatFunc> out;
  for (const auto& [n, d] : p.theta)
    out.push_back(RatFunc::make(n.coeff_transform(p.field, power).substitute_symbols(m),
                                d.coeff_transform(p.field, power).substitute_symbols(m)));
  return out;
}

IdealRep w_ideal_at(const GroupPresentation& p, int power) {
  std::vector<Poly> gens;
  for (const auto& g : p.w_ideal.generators()) gens.push_back(g.coeff_transform(p.field, power));
  return IdealRep(p.w, gens, p.w_ideal.limits());
}

std::optional<ParamTuple> solve_in_chart(const GroupPresentation& p, const std::vector<RatFunc>& target, int power,
                                         std::set<std::string> taken,
                                         const std::function<std::vector<RatFunc>(const std::vector<RatFunc>&)>& lhs_of) {
  taken.insert(p.w.names().begin(), p.w.names().end());
  add_symbols(taken, target);
  auto mn = fresh_names(p.w.size(), "m", taken);
  auto lhs = lhs_of(instantiate(p, symbols_of(mn), power));
  std::vector<std::pair<RatFunc, RatFunc>> ids;
  for (std::size_t i = 0; i < lhs.size(); ++i) ids.emplace_back(lhs[i], target[i]);
  IdealRep v = IdealRep::zero(p.v);
  return solve_match(ids, v, mn, relations_at(w_ideal_at(p, power), mn));
}

std::vector<RatFunc> same(const std::vector<RatFunc>& x) { return x; }

} // namespace

ParamTuple generic_param(const Trivialization& t, const std::string& base, std::set<std::string>& taken) {
  std::size_t m = t.dim_z();
  ParamTuple out;
  bool primed = m > 1 && !base.empty() && base.back() == '\'';
  std::string stem = primed ? base.substr(0, base.size() - 1) : base;
  for (std::size_t i = 0; i < m; ++i) {
    std::string want = m == 1 ? base : stem + std::to_string(i + 1) + (primed ? "'" : "");
    std::string name = fresh_name(want, taken);
    taken.insert(name);
    out.push_back(FieldElem::symbol(name));
  }
  return out;
}

std::set<std::string> reserved_names(const Trivialization& t) {
  std::set<std::string> out;
  for (const Vars* v : {&t.s.vars(), &t.z.vars(), &t.y.vars(), &t.g.source().vars(), &t.f.source().vars()})
    out.insert(v->names().begin(), v->names().end());
  const auto& gens = t.s.field().generators();
  out.insert(gens.begin(), gens.end());
  for (const RationalMap* m : {&t.s.phi(), &t.z.phi(), &t.g, &t.f}) add_symbols(out, m->components());
  return out;
}

TrivializationReport verify_trivialization(const Trivialization& t) {
  TrivializationReport rep;
  const DifferenceField& k = t.s.field();
  std::size_t n = t.dim_v(), m = t.dim_z(), l = t.fibre_dim();

  Certificate bir{"birational", false, {}};
  try {
    bir.ok = check_birational_inverse(t.g, t.f);
  } catch (const Error& e) {
    bir.residuals.push_back(e.what());
  }
  rep.checks.push_back(bir);

  const Vars& src = t.g.source().vars();
  const Vars& yv = t.y.vars();
  std::vector<RatFunc> gz(t.g.components().begin() + static_cast<long>(l), t.g.components().end());
  std::vector<RatFunc> fz(t.f.components().begin() + static_cast<long>(n), t.f.components().end());
  std::vector<RatFunc> src_z, y_z;
  for (std::size_t j = 0; j < m; ++j) {
    src_z.push_back(RatFunc(Poly::variable(src, n + j)));
    y_z.push_back(RatFunc(Poly::variable(yv, l + j)));
  }
  rep.checks.push_back(merge("fibred over Z", {map_certificate("", gz, src_z, t.g.source().ideal()),
                                               map_certificate("", fz, y_z, t.y.ideal())}));

  // (A^l x Z, id x psi) on the variables of Y, and phi x psi on the source of g.
  Vars yzn(slice(yv, l, l + m)), szn(slice(src, n, n + m)), svn(slice(src, 0, n));
  std::vector<Poly> amb;
  for (const auto& g : t.z.carrier().ideal().generators()) amb.push_back(rename_vars(g, yzn).embed(yv));
  AffineVariety ambient(IdealRep(yv, amb, t.y.ideal().limits()));
  std::vector<RatFunc> id_psi, phi_psi;
  for (std::size_t i = 0; i < l; ++i) id_psi.push_back(RatFunc(Poly::variable(yv, i)));
  for (const auto& c : t.z.phi().components()) id_psi.push_back(move_to(c, yzn, yv));
  for (const auto& c : t.s.phi().components()) phi_psi.push_back(move_to(c, svn, src));
  for (const auto& c : t.z.phi().components()) phi_psi.push_back(move_to(c, szn, src));
  auto fibred_sv = sigma_variety_trusted(k, ambient, RationalMap::trusted(ambient, sigma_transform(ambient, k, 1), id_psi));

  Certificate inv{"Y invariant", false, {}};
  try {
    inv.ok = is_invariant_subvariety(t.y, fibred_sv);
  } catch (const Error& e) {
    inv.residuals.push_back(e.what());
  }
  rep.checks.push_back(inv);

  Certificate eq{"equivariant", false, {}};
  try {
    auto lhs = compose_comps(id_psi, t.g.components(), t.g.source().ideal());
    auto rhs = compose_comps(sigma_transform(t.g, k, 1).components(), phi_psi, t.g.source().ideal());
    eq = map_certificate("equivariant", lhs, rhs, t.g.source().ideal());
  } catch (const Error& e) {
    eq.residuals.push_back(e.what());
  }
  rep.checks.push_back(eq);
  rep.checks.push_back(canonical_check(t));
  return rep;
}

CanonicalParameter canonical_parameter(const Trivialization& t, const ParamTuple& e, int sigma_power) {
  CanonicalParameter out;
  out.components = g_fibre(t, e, sigma_power);
  for (const auto& c : out.components) {
    for (const auto& ex : descending(c.num())) out.coefficients.push_back(c.num().coefficient(ex));
    if (!c.den().is_constant())
      for (const auto& ex : descending(c.den())) out.coefficients.push_back(c.den().coefficient(ex));
  }
  return out;
}

Certificate canonical_check(const Trivialization& t) {
  Certificate c{"canonical", false, {}};
  try {
    std::set<std::string> taken = reserved_names(t);
    ParamTuple u = generic_param(t, "u", taken);
    auto vn = fresh_names(t.dim_z(), "v", taken);
    auto gu = g_fibre(t, u, 0);
    auto gv = g_fibre(t, symbols_of(vn), 0);
    std::vector<std::pair<RatFunc, RatFunc>> ids;
    for (std::size_t i = 0; i < gu.size(); ++i) ids.emplace_back(gv[i], gu[i]);
    auto sol = solve_match(ids, t.s.carrier().ideal(), vn, relations_at(t.z.carrier().ideal(), vn));
    if (!sol) {
      c.residuals.push_back("g_v = g_u does not determine v");
      return c;
    }
    Relation rel{names_of(u), t.z.carrier().ideal()};
    c = tuple_certificate("canonical", *sol, u, {rel});
  } catch (const Error& e) {
    c.residuals.push_back(e.what());
  }
  return c;
}

std::vector<RatFunc> theta_of(const Trivialization& t, const GroupParam& w) {
  int p = w.sigma_power;
  if (!t.y.ideal().is_zero() && !same_ideal(fibre_ideal(t, w.e, p), fibre_ideal(t, w.e2, p)))
    fail(ErrorKind::FibreMismatch, "the fibres Y_e and Y_e' differ");
  return compose_comps(f_fibre(t, w.e2, p), g_fibre(t, w.e, p), v_ideal(t, p));
}

bool params_equivalent(const Trivialization& t, const GroupParam& a, const GroupParam& b) {
  if (a.sigma_power != b.sigma_power) return false;
  return map_certificate("", theta_of(t, a), theta_of(t, b), v_ideal(t, a.sigma_power)).ok;
}

ParamTuple transport(const Trivialization& t, const GroupParam& w, const ParamTuple& u) {
  return transport_theta(t, theta_of(t, w), u, w.sigma_power);
}

GroupParam group_invert(const GroupParam& w) { return {w.e2, w.e, w.sigma_power}; }

GroupParam group_multiply(const Trivialization& t, const GroupParam& w1, const GroupParam& w2) {
  if (w1.sigma_power != w2.sigma_power) fail(ErrorKind::InvalidArgument, "parameters from different families");
  std::set<std::string> taken = reserved_names(t);
  for (const auto* w : {&w1, &w2}) {
    add_symbols(taken, w->e);
    add_symbols(taken, w->e2);
  }
  ParamTuple u = generic_param(t, "u", taken);
  return {transport(t, group_invert(w2), u), transport(t, w1, u), w1.sigma_power};
}

GroupParam rho(const Trivialization& t, const GroupParam& w) {
  auto psi = sigma_transform(t.z.phi(), t.s.field(), w.sigma_power);
  auto apply = [&](const ParamTuple& e) {
    ParamTuple out;
    for (const auto& c : psi.components()) out.push_back(c.evaluate(e));
    return out;
  };
  return {apply(w.e), apply(w.e2), w.sigma_power + 1};
}

Certificate verify_intertwining(const Trivialization& t) {
  Certificate c{"intertwining", false, {}};
  try {
    std::set<std::string> taken = reserved_names(t);
    GroupParam w{generic_param(t, "u", taken), generic_param(t, "u'", taken), 0};
    const auto& phi = t.s.phi().components();
    auto lhs = compose_comps(phi, theta_of(t, w), t.s.carrier().ideal());
    auto rhs = compose_comps(theta_of(t, rho(t, w)), phi, t.s.carrier().ideal());
    std::vector<Relation> rels{{names_of(w.e), t.z.carrier().ideal()}, {names_of(w.e2), t.z.carrier().ideal()}};
    c = map_certificate("intertwining", lhs, rhs, t.s.carrier().ideal(), rels);
  } catch (const Error& e) {
    c.residuals.push_back(e.what());
  }
  return c;
}

bool h_lambda_filter(const Trivialization& t, const GroupParam& w, const RatFunc& lambda) {
  std::set<std::string> taken = reserved_names(t);
  add_symbols(taken, w.e);
  add_symbols(taken, w.e2);
  add_symbols(taken, std::vector<RatFunc>{lambda});
  ParamTuple u = generic_param(t, "u", taken);
  ParamTuple v = transport(t, w, u);
  RatFunc l = lambda.vars() == t.z.vars() ? lambda : lambda.rebase(t.z.vars());
  l = l.coeff_transform(t.s.field(), w.sigma_power);
  FieldElem d = l.evaluate(v) - l.evaluate(u);
  return residual_mod(Poly(Vars(), d), IdealRep::zero(Vars()), {{names_of(u), z_ideal(t, w.sigma_power)}}).is_zero();
}

std::vector<RatFunc> GroupPresentation::theta_at(const ParamTuple& a) const { return instantiate(*this, a, 0); }

GroupPresentation build_presentation(const Trivialization& t, const std::vector<RatFunc>& lambdas) {
  GroupPresentation p;
  p.field = t.s.field();
  p.v = t.s.vars();
  p.lambdas = lambdas;
  const IdealRep& vi = t.s.carrier().ideal();
  const IdealRep& zi = t.z.carrier().ideal();
  std::set<std::string> taken = reserved_names(t);
  add_symbols(taken, lambdas);

  GroupParam w0{generic_param(t, "u", taken), generic_param(t, "u'", taken), 0};
  std::vector<RatFunc> theta0;
  try {
    theta0 = theta_of(t, w0);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FibreMismatch) throw;
    fail(ErrorKind::PresentationIncomplete, "fibres of Y vary with the parameter; only product families are supported");
  }

  // Chart: coefficients of theta_(u,u') depending on u, u'.
  std::set<std::string> usyms;
  for (const auto* e : {&w0.e, &w0.e2}) add_symbols(usyms, *e);
  std::vector<FieldElem> coords;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<Poly, Poly>> raw;
  for (const auto& c : theta0) {
    Poly num = c.num(), den = c.den();
    FieldElem c0 = den.constant_term();
    if (!den.is_constant() && !c0.is_zero()) {
      num = num.scaled(c0.inverse());
      den = den.scaled(c0.inverse());
    }
    for (const Poly* q : {&num, &den})
      for (const auto& ex : descending(*q)) {
        FieldElem coef = q->coefficient(ex);
        if (!coef.depends_on(usyms)) continue;
        if (index.emplace(coef.to_string(), coords.size()).second) coords.push_back(coef);
      }
    raw.emplace_back(num, den);
  }
  std::set<std::string> wtaken = taken;
  add_symbols(wtaken, w0.e);
  add_symbols(wtaken, w0.e2);
  auto wn = fresh_names(coords.size(), "w", wtaken);
  p.w = Vars(wn);
  for (const auto& [num, den] : raw) {
    std::pair<Poly, Poly> tpl{Poly(num.vars()), Poly(den.vars())};
    for (auto [src, dst] : {std::pair{&num, &tpl.first}, std::pair{&den, &tpl.second}})
      for (const auto& [ex, coef] : src->terms()) {
        auto it = coef.depends_on(usyms) ? index.find(coef.to_string()) : index.end();
        FieldElem c = it == index.end() ? coef : FieldElem::symbol(wn[it->second]);
        *dst += Poly::monomial(num.vars(), ex, c);
      }
    p.theta.push_back(std::move(tpl));
  }
  std::vector<std::string> un = names_of(w0.e), un2 = names_of(w0.e2);
  std::vector<std::string> pair_names = un;
  pair_names.insert(pair_names.end(), un2.begin(), un2.end());
  Vars pv(pair_names);
  std::vector<RatFunc> coord_maps;
  for (const auto& c : coords) coord_maps.push_back(RatFunc(Vars(), c).rebase(pv));
  std::vector<Poly> pair_rel = relations_at(zi, un), more = relations_at(zi, un2);
  pair_rel.insert(pair_rel.end(), more.begin(), more.end());
  for (auto& g : pair_rel) g = g.embed(pv);
  p.w_ideal = coords.empty() ? IdealRep::zero(p.w) : image_closure(coord_maps, IdealRep(pv, pair_rel), p.w);
  if (coords.empty()) p.notes.push_back("theta does not depend on the parameters: H0 is trivial");
  p.notes.push_back("one chart of W; components of a disconnected group are not separated");

  wtaken.insert(wn.begin(), wn.end());
  auto instance = [&](const std::string& base) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < wn.size(); ++i)
      names.push_back(fresh_name(wn.size() == 1 ? base : base + "_" + std::to_string(i + 1), wtaken));
    wtaken.insert(names.begin(), names.end());
    return names;
  };
  auto a_n = instance("w1"), b_n = instance("w2"), c_n = instance("w3");
  p.w1 = Vars(a_n);
  p.w2 = Vars(b_n);
  ParamTuple a = symbols_of(a_n), b = symbols_of(b_n), c = symbols_of(c_n);
  auto ra = Relation{a_n, p.w_ideal}, rb = Relation{b_n, p.w_ideal}, rc = Relation{c_n, p.w_ideal};

  auto require = [](std::optional<ParamTuple> s, const std::string& what) {
    if (!s) fail(ErrorKind::PresentationIncomplete, "no unique solution for " + what);
    return *s;
  };
  auto theta_a = p.theta_at(a), theta_b = p.theta_at(b);
  auto ident = identity_comps(p.v);
  p.identity = require(solve_in_chart(p, ident, 0, wtaken, same), "the identity");
  p.multiply = require(solve_in_chart(p, compose_comps(theta_a, theta_b, vi), 0, wtaken, same), "the product");
  p.inverse = require(solve_in_chart(p, ident, 0, wtaken,
                                     [&](const std::vector<RatFunc>& m) { return compose_comps(m, theta_a, vi); }),
                      "the inverse");
  const auto& phi = t.s.phi().components();
  p.rho = require(solve_in_chart(p, compose_comps(phi, theta_a, vi), 1, wtaken,
                                 [&](const std::vector<RatFunc>& m) { return compose_comps(m, phi, vi); }),
                  "rho");

  auto mul = [&](const ParamTuple& x, const ParamTuple& y) {
    auto m = binding_map(a_n, x);
    auto mb = binding_map(b_n, y);
    m.insert(mb.begin(), mb.end());
    return apply_map(p.multiply, m);
  };
  auto inv = [&](const ParamTuple& x) { return apply_map(p.inverse, binding_map(a_n, x)); };
  auto rh = [&](const ParamTuple& x) { return apply_map(p.rho, binding_map(a_n, x)); };

  auto& certs = p.certificates;
  certs.push_back(tuple_certificate("associativity", mul(mul(a, b), c), mul(a, mul(b, c)), {ra, rb, rc}));
  certs.push_back(merge("identity", {tuple_certificate("", mul(p.identity, a), a, {ra}),
                                     tuple_certificate("", mul(a, p.identity), a, {ra})}));
  certs.push_back(merge("inverse", {tuple_certificate("", mul(a, inv(a)), p.identity, {ra}),
                                    tuple_certificate("", mul(inv(a), a), p.identity, {ra})}));
  ParamTuple mul_sigma;
  for (const auto& e : p.multiply) mul_sigma.push_back(p.field.sigma_apply(e, 1));
  {
    auto m = binding_map(a_n, rh(a));
    auto mb = binding_map(b_n, rh(b));
    m.insert(mb.begin(), mb.end());
    certs.push_back(tuple_certificate("rho homomorphism", rh(mul(a, b)), apply_map(mul_sigma, m), {ra, rb}));
  }
  certs.push_back(merge("action", {map_certificate("", p.theta_at(mul(a, b)), compose_comps(theta_a, theta_b, vi), vi,
                                                   {ra, rb}),
                                   map_certificate("", p.theta_at(p.identity), ident, vi)}));

  // The pair product (inv(w2) u, w1 u) and rho on pairs, read in the chart.
  {
    std::set<std::string> tk = wtaken;
    GroupParam wa{generic_param(t, "s", tk), generic_param(t, "s'", tk), 0};
    GroupParam wb{generic_param(t, "r", tk), generic_param(t, "r'", tk), 0};
    std::vector<Relation> rels;
    for (const auto* e : {&wa.e, &wa.e2, &wb.e, &wb.e2}) rels.push_back({names_of(*e), zi});
    Certificate route{"multiplication route", false, {}};
    Certificate rroute{"rho route", false, {}};
    try {
      auto ca = coordinates(p, t, wa), cb = coordinates(p, t, wb);
      route = tuple_certificate("multiplication route", coordinates(p, t, group_multiply(t, wa, wb)), mul(ca, cb), rels);
      rroute = tuple_certificate("rho route", coordinates(p, t, rho(t, wa)), rh(ca), rels);
    } catch (const Error& e) {
      route.residuals.push_back(e.what());
      rroute.residuals.push_back(e.what());
    }
    certs.push_back(route);
    certs.push_back(rroute);
  }
  certs.push_back(verify_intertwining(t));
  certs.push_back(verify_action_equivariance(p, t.s));
  certs.push_back(canonical_check(t));

  // H = W cut by lambda(wu) = lambda(u).
  std::vector<Poly> hgens = p.w_ideal.generators();
  if (!lambdas.empty() && !coords.empty()) {
    std::set<std::string> tk = wtaken;
    ParamTuple u = generic_param(t, "u", tk);
    ParamTuple v = transport_theta(t, theta_a, u, 0);
    auto unames = names_of(u);
    std::set<std::string> uset(unames.begin(), unames.end());
    Vars av(a_n);
    for (const auto& lam : lambdas) {
      RatFunc l = lam.vars() == t.z.vars() ? lam : lam.rebase(t.z.vars());
      FieldElem d = l.evaluate(v) - l.evaluate(u);
      std::map<SymMonomial, MPoly, SymMonomialLess> split;
      for (const auto& [mono, coef] : d.num().terms()) {
        std::vector<SymMonomial::Factor> in_u, rest;
        for (const auto& f : mono.factors()) (uset.count(f.first) ? in_u : rest).push_back(f);
        split[SymMonomial(in_u)] += MPoly::term(SymMonomial(rest), coef);
      }
      for (const auto& [mono, coef] : split) {
        Poly h = rename_vars(from_mpoly(coef, av), p.w);
        if (!h.is_zero()) hgens.push_back(h);
      }
    }
  }
  p.h_ideal = IdealRep(p.w, hgens, p.w_ideal.limits());
  p.h_dimension = dimension(p.h_ideal);
  {
    std::vector<Poly> point;
    for (std::size_t i = 0; i < p.w.size(); ++i)
      point.push_back(Poly::variable(p.w, i) - Poly(p.w, p.identity[i]));
    p.h_trivial = same_ideal(p.h_ideal, IdealRep(p.w, point));
  }
  if (p.h_trivial) p.notes.push_back("H is the trivial group");

  Certificate stable{"H rho-stable", true, {}};
  if (!p.h_ideal.is_zero()) {
    ParamTuple rw;
    auto to_w = binding_map(a_n, symbols_of(p.w.names()));
    for (const auto& e : p.rho) rw.push_back(e.substitute(to_w));
    for (const auto& h : p.h_ideal.generators()) {
      FieldElem val = h.coeff_transform(p.field, 1).evaluate(rw);
      Poly r = p.h_ideal.normal_form(from_mpoly(val.num(), p.w));
      stable.ok = stable.ok && r.is_zero();
      stable.residuals.push_back(r.to_string());
    }
  }
  certs.push_back(stable);
  return p;
}

GroupPresentation build_presentation(const Trivialization& t, unsigned lambda_degree, const std::vector<RatFunc>& extra) {
  auto found = find_rational_invariants(t.z, lambda_degree);
  std::vector<RatFunc> lambdas;
  for (const auto& f : found.invariants) lambdas.push_back(f.lambda);
  lambdas.insert(lambdas.end(), extra.begin(), extra.end());
  auto p = build_presentation(t, lambdas);
  if (!found.complete) p.notes.push_back("invariant search on (Z, psi) is incomplete; H may be too large");
  return p;
}

ParamTuple coordinates(const GroupPresentation& p, const Trivialization& t, const GroupParam& w) {
  std::set<std::string> taken = reserved_names(t);
  add_symbols(taken, w.e);
  add_symbols(taken, w.e2);
  auto s = solve_in_chart(p, theta_of(t, w), w.sigma_power, taken, same);
  if (!s) fail(ErrorKind::NotInH0, "the pair has no coordinates in the chart");
  return *s;
}

Certificate verify_action_equivariance(const GroupPresentation& p, const SigmaVariety& s) {
  Certificate c{"action equivariance", false, {}};
  try {
    ParamTuple a = symbols_of(p.w1.names());
    const auto& phi = s.phi().components();
    const IdealRep& vi = s.carrier().ideal();
    auto lhs = compose_comps(phi, p.theta_at(a), vi);
    auto rhs = compose_comps(instantiate(p, p.rho, 1), phi, vi);
    c = map_certificate("action equivariance", lhs, rhs, vi, {{p.w1.names(), p.w_ideal}});
  } catch (const Error& e) {
    c.residuals.push_back(e.what());
  }
  return c;
}

bool sharp_membership(const GroupPresentation& p, const ParamTuple& w) {
  if (w.size() != p.w.size()) fail(ErrorKind::ArityError, "point has the wrong number of coordinates");
  for (const auto& g : p.w_ideal.generators())
    if (!g.evaluate(w).is_zero()) return false;
  auto r = apply_map(p.rho, binding_map(p.w1.names(), w));
  for (std::size_t i = 0; i < w.size(); ++i)
    if (p.field.sigma_apply(w[i], 1) != r[i]) return false;
  return true;
}

SharpSolution sharp_solve_affine(const GroupPresentation& p, unsigned degree_bound) {
  SharpSolution out;
  out.degree_bound = degree_bound;
  std::size_t r = p.w.size();
  const auto& an = p.w1.names();
  std::set<std::string> aset(an.begin(), an.end());
  std::vector<std::vector<FieldElem>> A(r, std::vector<FieldElem>(r));
  std::vector<FieldElem> b(r);
  for (std::size_t j = 0; j < r; ++j) {
    const FieldElem& e = p.rho[j];
    for (const auto& s : e.den().symbols())
      if (aset.count(s)) fail(ErrorKind::NonAffineRho, "rho has a denominator in the chart coordinates");
    for (const auto& [mono, coef] : e.num().terms()) {
      std::vector<SymMonomial::Factor> in_a, rest;
      for (const auto& f : mono.factors()) (aset.count(f.first) ? in_a : rest).push_back(f);
      FieldElem part = FieldElem::fraction(MPoly::term(SymMonomial(rest), coef), e.den());
      if (in_a.empty()) {
        b[j] += part;
      } else if (in_a.size() == 1 && in_a[0].second == 1) {
        std::size_t k = static_cast<std::size_t>(std::find(an.begin(), an.end(), in_a[0].first) - an.begin());
        A[j][k] += part;
      } else {
        fail(ErrorKind::NonAffineRho, "rho is not affine in the chart coordinates");
      }
    }
  }
  auto monos = generator_monomials(p.field, degree_bound);
  std::size_t nt = monos.size(), cols = r * nt;
  linalg::Matrix sys(0, cols + 1), hom(0, cols);
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<FieldElem> row(cols + 1);
    for (std::size_t s = 0; s < nt; ++s) {
      row[j * nt + s] += p.field.sigma_apply(monos[s], 1);
      for (std::size_t k = 0; k < r; ++k) row[k * nt + s] -= A[j][k] * monos[s];
    }
    row[cols] = -b[j];
    for (auto& q : split_row(row)) {
      sys.append_row(q);
      q.pop_back();
      hom.append_row(q);
    }
  }
  auto to_tuple = [&](const std::vector<FieldElem>& c) {
    ParamTuple w(r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t s = 0; s < nt; ++s) w[k] += c[k * nt + s] * monos[s];
    return w;
  };
  auto ech = linalg::rref(sys);
  std::vector<FieldElem> part(cols);
  for (std::size_t i = 0; i < ech.rank(); ++i) {
    if (ech.pivots[i] == cols) {
      out.solvable = false;
      return out;
    }
    part[ech.pivots[i]] = -ech.reduced(i, cols);
  }
  out.particular = to_tuple(part);
  for (const auto& v : linalg::kernel(hom)) out.directions.push_back(to_tuple(v));
  return out;
}

std::optional<ParamTuple> solve_match(const std::vector<std::pair<RatFunc, RatFunc>>& identities,
                                      const IdealRep& ideal, const std::vector<std::string>& unknowns,
                                      const std::vector<Poly>& constraints) {
  Vars uv(unknowns);
  const Vars& x = ideal.vars();
  Vars ring = x.concat(uv);
  IdealRep lifted = ideal.is_zero() ? IdealRep::zero(ring) : ideal.embed(ring);
  std::vector<Poly> eqs;
  for (const auto& c : constraints) eqs.push_back(c.vars() == uv ? c : c.embed(uv));
  for (const auto& [lhs, rhs] : identities) {
    auto [na, da] = flat(lhs.vars() == x ? lhs : lhs.rebase(x));
    auto [nb, db] = flat(rhs.vars() == x ? rhs : rhs.rebase(x));
    Poly d = from_mpoly(na * db - nb * da, ring);
    if (!lifted.is_zero()) d = lifted.normal_form(d, MonomialOrder::elimination(x.size()));
    std::map<Exponent, Poly> groups;
    for (const auto& [e, c] : d.terms()) {
      Exponent xe(e.begin(), e.begin() + static_cast<long>(x.size()));
      Exponent ue(e.begin() + static_cast<long>(x.size()), e.end());
      auto it = groups.try_emplace(xe, Poly(uv)).first;
      it->second += Poly::monomial(uv, ue, c);
    }
    for (auto& [e, g] : groups) eqs.push_back(std::move(g));
  }
  return solve_unique(IdealRep(uv, eqs, ideal.limits()));
}

} // namespace sdyn

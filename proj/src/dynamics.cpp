#include "sdyn/dynamics.hpp"

#include "sdyn/errors.hpp"
#include "sdyn/solve.hpp"

#include <algorithm>
#include <map>

namespace sdyn {

namespace {

FieldElem eval_monomial(const Exponent& e, const Point& a) {
  FieldElem r(1);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) r *= a[i].pow(e[i]);
  return r;
}

Poly form(const std::vector<Exponent>& monos, const std::vector<FieldElem>& coeffs, const Vars& v) {
  Poly p(v);
  for (std::size_t j = 0; j < monos.size(); ++j)
    if (!coeffs[j].is_zero()) p += Poly::monomial(v, monos[j], coeffs[j]);
  return p;
}

std::optional<AffineVariety> hypersurface(const SigmaVariety& s, const Poly& p) {
  try {
    return AffineVariety(s.carrier().ideal().plus({p}));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// g vanishes on V(I).
bool in_radical(const Poly& g, const IdealRep& ideal) {
  std::set<std::string> taken(ideal.vars().names().begin(), ideal.vars().names().end());
  Vars ring = ideal.vars().concat(Vars{fresh_name("_r", taken)});
  Poly r = Poly::variable(ring, ring.size() - 1);
  return ideal.embed(ring).plus({Poly(ring, FieldElem(1)) - r * g.embed(ring)}).is_unit();
}

// V(a) is contained in V(b).
bool locus_within(const IdealRep& a, const IdealRep& b) {
  for (const auto& g : b.generators())
    if (!in_radical(g, a)) return false;
  return true;
}

bool invariant(const SigmaVariety& s, const AffineVariety& x) {
  try {
    return is_invariant_subvariety(x, s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ResourceLimit) throw;
    return false;
  }
}

} // namespace

Witness translational_witness(const SigmaVariety& s, const GroupPresentation& p) {
  if (!s.field().is_autonomous()) fail(ErrorKind::InvalidArgument, "translational witnesses need an autonomous system");
  std::set<std::string> taken(p.w.names().begin(), p.w.names().end());
  taken.insert(s.vars().names().begin(), s.vars().names().end());
  for (const auto& c : s.phi().components()) {
    auto a = c.num().coefficient_symbols(), b = c.den().coefficient_symbols();
    taken.insert(a.begin(), a.end());
    taken.insert(b.begin(), b.end());
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    names.push_back(fresh_name(p.w.size() == 1 ? "m" : "m" + std::to_string(i + 1), taken));
    taken.insert(names.back());
  }
  ParamTuple m;
  for (const auto& n : names) m.push_back(FieldElem::symbol(n));
  auto theta = p.theta_at(m);
  const auto& phi = s.phi().components();
  std::vector<std::pair<RatFunc, RatFunc>> ids;
  for (std::size_t i = 0; i < phi.size(); ++i) ids.emplace_back(theta[i], phi[i]);
  std::vector<Poly> cons;
  Vars mv(names);
  for (const auto& g : p.w_ideal.generators()) cons.push_back(rename_vars(g, mv));
  std::optional<ParamTuple> sol;
  try {
    sol = solve_match(ids, s.carrier().ideal(), names, cons);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceLimit) throw;
    fail(ErrorKind::NotFound, "budget exhausted while solving theta_w = phi");
  }
  if (!sol) fail(ErrorKind::NotFound, "no chart element w with theta_w = phi");
  Witness out{*sol, {"witness", true, {}}};
  auto tw = p.theta_at(*sol);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Poly d = tw[i].num() * phi[i].den() - phi[i].num() * tw[i].den();
    Poly r = s.carrier().ideal().normal_form(d);
    out.check.ok = out.check.ok && r.is_zero();
    out.check.residuals.push_back(r.to_string());
  }
  return out;
}

std::vector<Point> orbit_points(const SigmaVariety& s, const Point& a, unsigned n) {
  if (a.size() != s.vars().size()) fail(ErrorKind::ArityError, "point has the wrong number of coordinates");
  if (!s.carrier().contains_point(a)) fail(ErrorKind::InvalidArgument, "base point is not on the variety");
  std::vector<Point> out{a};
  for (unsigned i = 1; i <= n; ++i) {
    Point next;
    try {
      for (const auto& c : s.phi().components()) next.push_back(c.coeff_transform(s.field(), static_cast<int>(i) - 1).evaluate(out.back()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroDenominator) throw;
      fail(ErrorKind::OrbitLeavesDomain, "iterate " + std::to_string(i) + " leaves the domain of phi");
    }
    out.push_back(std::move(next));
  }
  return out;
}

linalg::Matrix evaluation_matrix(const std::vector<Exponent>& monomials, const std::vector<Point>& points) {
  linalg::Matrix m(points.size(), monomials.size());
  const long rows = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < monomials.size(); ++c)
      m(static_cast<std::size_t>(r), c) = eval_monomial(monomials[c], points[static_cast<std::size_t>(r)]);
  return m;
}

linalg::Matrix evaluation_matrix_serial(const std::vector<Exponent>& monomials, const std::vector<Point>& points) {
  linalg::Matrix m(points.size(), monomials.size());
  for (std::size_t r = 0; r < points.size(); ++r)
    for (std::size_t c = 0; c < monomials.size(); ++c) m(r, c) = eval_monomial(monomials[c], points[r]);
  return m;
}

OrbitCertificate zdo_orbit_density(const SigmaVariety& s, const Point& a, unsigned d, unsigned n) {
  if (!s.field().is_autonomous()) fail(ErrorKind::InvalidArgument, "orbit density needs an autonomous system");
  OrbitCertificate out;
  out.base = a;
  out.iterations = n;
  out.degree = d;
  out.orbit = orbit_points(s, a, n);
  auto monos = standard_monomials(s.carrier().ideal(), d);
  out.slice_dim = monos.size();
  linalg::Matrix full = evaluation_matrix(monos, out.orbit);
  linalg::Matrix prefix(0, monos.size());
  for (std::size_t i = 0; i < full.rows(); ++i) {
    prefix.append_row(full.row(i));
    out.ranks.push_back(linalg::rank(prefix));
  }
  out.dense = out.ranks.back() == out.slice_dim;
  for (const auto& k : linalg::kernel(full)) out.vanishing.push_back(form(monos, k, s.vars()));
  return out;
}

DMEReport dme_enumerate(const SigmaVariety& s, unsigned d, unsigned c, unsigned n_pts, const SearchOptions& options) {
  DMEReport out;
  out.degree = d;
  out.cofactor_degree = c;

  DarbouxResult dar = find_darboux_pairs(s, d, c, options);
  out.complete = dar.complete;
  out.notes = dar.notes;
  std::map<std::string, unsigned> per_cofactor;
  std::vector<AffineVariety> loci;
  std::vector<DarbouxPair> pairs = dar.pairs;
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const DarbouxPair& a, const DarbouxPair& b) { return a.p.total_degree() < b.p.total_degree(); });
  for (const auto& pair : pairs) {
    auto x = hypersurface(s, pair.p);
    if (!x) continue;
    bool repeated = false;
    for (const auto& o : loci) repeated = repeated || (locus_within(o.ideal(), x->ideal()) && locus_within(x->ideal(), o.ideal()));
    if (repeated) continue;
    InvariantHypersurface h{pair.p, pair.cofactor, invariant(s, *x), true};
    if (!h.verified) continue;
    ++per_cofactor[pair.cofactor.to_string()];
    out.hypersurfaces.push_back(h);
    loci.push_back(*x);
  }
  for (const auto& [cof, count] : per_cofactor)
    if (count > 1) {
      out.infinitely_many = true;
      out.notes.push_back("Darboux polynomials with cofactor " + cof + " form a pencil");
    }
  for (std::size_t i = 0; i < loci.size(); ++i)
    for (std::size_t j = 0; j < loci.size(); ++j)
      if (i != j && locus_within(loci[i].ideal(), loci[j].ideal()))
        out.hypersurfaces[i].maximal = false;

  if (s.field().is_autonomous()) {
    const Vars& v = s.vars();
    std::vector<Poly> eqs = s.carrier().ideal().generators();
    Poly dens(v, FieldElem(1));
    for (std::size_t i = 0; i < v.size(); ++i) {
      const RatFunc& f = s.phi().components()[i];
      eqs.push_back(f.num() - Poly::variable(v, i) * f.den());
      dens = dens * f.den();
    }
    IdealRep fixed(v, eqs, s.carrier().ideal().limits());
    if (!dens.is_constant()) fixed = saturate(fixed, dens);
    PointSet pts = fixed.is_unit() ? PointSet{} : rational_points(fixed);
    if (!pts.complete) {
      out.complete = false;
      out.notes.push_back("invariant points not all resolved over k");
    }
    for (const auto& a : pts.points) {
      std::vector<Poly> lin;
      for (std::size_t i = 0; i < v.size(); ++i) lin.push_back(Poly::variable(v, i) - Poly(v, a[i]));
      IdealRep pi(v, lin);
      bool duplicate = false, maximal = true;
      for (const auto& x : loci) {
        if (locus_within(x.ideal(), pi)) duplicate = true;
        else if (locus_within(pi, x.ideal())) maximal = false;
      }
      if (!duplicate) out.points.push_back({a, maximal});
    }
  } else {
    out.complete = false;
    out.notes.push_back("invariant points are only enumerated for autonomous systems");
  }

  RationalInvariants inv = find_rational_invariants(s, d, options);
  if (!inv.complete) out.complete = false;
  for (const auto& f : inv.invariants)
    if (f.nonconstant) {
      out.level_function = f.lambda;
      break;
    }
  if (out.level_function) {
    const RatFunc& l = *out.level_function;
    std::vector<IdealRep> seen;
    for (unsigned k = 1; k <= n_pts; ++k) {
      Poly p = l.num() - l.den().scaled(FieldElem(static_cast<long>(k)));
      auto x = hypersurface(s, p);
      if (!x || !invariant(s, *x)) continue;
      bool fresh = true;
      for (const auto& o : seen) fresh = fresh && !same_ideal(o, x->ideal());
      if (!fresh) continue;
      seen.push_back(x->ideal());
      out.level_sets.push_back(p);
    }
    if (out.level_sets.size() == n_pts) out.infinitely_many = true;
  }
  if (out.infinitely_many) out.verdict = "INFINITE";
  else if (out.complete) out.verdict = "FINITE-WITHIN-BOUND";
  else out.verdict = "INCONCLUSIVE";
  return out;
}

PowerBoundReport power_bound_report(const SigmaVariety& s, unsigned d, const SearchOptions& options) {
  PowerBoundReport out;
  out.bound = static_cast<unsigned>(s.vars().size()) + 3;
  out.autonomous_bound = s.field().is_autonomous() ? 2 : 0;
  out.profile = orthogonality_profile(s, d, out.bound, options);
  for (const auto& e : out.profile.entries) {
    if (e.found.empty()) continue;
    SigmaVariety power = cartesian_power(s, e.n);
    for (const auto& f : e.found) out.verified = out.verified && verify_invariant(f.lambda, power).holds;
  }
  out.verdict = out.profile.first_hit && out.verified ? "PASS" : "INCONCLUSIVE";
  return out;
}

} // namespace sdyn

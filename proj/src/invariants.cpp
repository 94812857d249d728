#include "sdyn/invariants.hpp"

#include "sdyn/errors.hpp"
#include "sdyn/linalg.hpp"
#include "sdyn/solve.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sdyn {

std::vector<FieldElem> generator_monomials(const DifferenceField& k, unsigned D) {
  std::vector<FieldElem> out;
  const auto& gens = k.generators();
  for (const auto& e : monomials_up_to(gens.size(), D)) {
    FieldElem m(1);
    for (std::size_t i = 0; i < e.size(); ++i) m *= FieldElem::symbol(gens[i]).pow(e[i]);
    out.push_back(m);
  }
  return out;
}

std::vector<std::vector<FieldElem>> split_row(const std::vector<FieldElem>& row) {
  MPoly l(1);
  for (const auto& e : row)
    if (!e.is_zero()) l = lcm(l, e.den());
  std::map<SymMonomial, std::vector<FieldElem>, SymMonomialLess> rows;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].is_zero()) continue;
    MPoly v = row[i].num() * *exact_divide(l, row[i].den());
    for (const auto& [m, q] : v.terms()) {
      auto& r = rows[m];
      if (r.empty()) r.resize(row.size());
      r[i] = FieldElem(q);
    }
  }
  std::vector<std::vector<FieldElem>> out;
  for (auto& [m, r] : rows) out.push_back(std::move(r));
  return out;
}

namespace {

unsigned ansatz_degree(const SearchOptions& o, unsigned d) { return o.coeff_degree ? o.coeff_degree : d + 1; }

Poly poly_of_vector(const std::vector<FieldElem>& v, const std::vector<Exponent>& monos,
                    const std::vector<FieldElem>& tm, const Vars& x) {
  Poly p(x);
  for (std::size_t c = 0; c < v.size(); ++c)
    if (!v[c].is_zero()) p += Poly::monomial(x, monos[c / tm.size()], v[c] * tm[c % tm.size()]);
  return p;
}

bool is_constant_mod(const Poly& p) { return p.is_constant(); }

std::string key(const RatFunc& f) { return f.to_string(); }

} // namespace

Poly clearing_factor(const SigmaVariety& s, unsigned d) {
  Poly b(s.vars(), FieldElem(1));
  for (const auto& c : s.phi().components())
    if (!c.is_polynomial()) b = b * c.den().pow(d);
  return b;
}

InvariantCheck verify_invariant(const RatFunc& lambda, const SigmaVariety& s) {
  RatFunc l = lambda.vars() == s.vars() ? lambda : lambda.rebase(s.vars());
  if (!l.is_polynomial() && s.carrier().ideal().contains(l.den()))
    fail(ErrorKind::MapUndefinedOnX, "denominator of the function vanishes on the carrier");
  RatFunc moved = substitute(l.coeff_transform(s.field(), 1), s.phi().components());
  if (!moved.is_polynomial() && s.carrier().ideal().contains(moved.den()))
    fail(ErrorKind::CompositionUndefined, "transformed function is undefined on the carrier");
  InvariantCheck out;
  out.residual = s.carrier().ideal().normal_form(l.num() * moved.den() - l.den() * moved.num());
  out.holds = out.residual.is_zero();
  return out;
}

PolynomialInvariants twisted_kernel(const SigmaVariety& s, unsigned d, const Poly* multiplier,
                                    const SearchOptions& options) {
  const Vars& x = s.vars();
  const IdealRep& ideal = s.carrier().ideal();
  const auto& comps = s.phi().components();
  auto monos = standard_monomials(ideal, d);
  Poly b = clearing_factor(s, d);
  Poly m = multiplier ? multiplier->embed(x) : b;

  PolynomialInvariants out;
  out.semilinear = !s.field().is_autonomous();
  out.coeff_degree = out.semilinear ? ansatz_degree(options, d) : 0;
  std::vector<FieldElem> tm = out.semilinear ? generator_monomials(s.field(), out.coeff_degree)
                                             : std::vector<FieldElem>{FieldElem(1)};
  std::vector<FieldElem> tms;
  for (const auto& t : tm) tms.push_back(s.field().sigma_apply(t, 1));

  if (!ideal.is_zero()) ideal.basis();
  const auto nm = static_cast<std::ptrdiff_t>(monos.size());
  std::vector<Poly> pulled(monos.size()), shifted(monos.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nm; ++i) {
    Poly xm = Poly::monomial(x, monos[static_cast<std::size_t>(i)]);
    pulled[static_cast<std::size_t>(i)] = substitute_cleared(xm, comps, d);
    shifted[static_cast<std::size_t>(i)] = m * xm;
  }
  const std::size_t ncols = monos.size() * tm.size();
  std::vector<Poly> cols(ncols);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(ncols); ++c) {
    std::size_t i = static_cast<std::size_t>(c) / tm.size(), j = static_cast<std::size_t>(c) % tm.size();
    cols[static_cast<std::size_t>(c)] =
        ideal.normal_form(pulled[i].scaled(tms[j]) - shifted[i].scaled(tm[j]));
  }

  std::map<Exponent, std::size_t> row_of;
  for (const auto& col : cols)
    for (const auto& [e, c] : col.terms()) row_of.try_emplace(e, 0);
  std::size_t r = 0;
  for (auto& [e, idx] : row_of) idx = r++;
  std::vector<std::vector<FieldElem>> rows(row_of.size(), std::vector<FieldElem>(ncols));
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [e, v] : cols[c].terms()) rows[row_of[e]][c] = v;

  linalg::Matrix a(0, ncols);
  for (const auto& row : rows) {
    if (out.semilinear) {
      for (const auto& q : split_row(row)) a.append_row(q);
    } else {
      a.append_row(row);
    }
  }
  for (const auto& v : linalg::kernel(a)) out.basis.push_back(poly_of_vector(v, monos, tm, x));
  return out;
}

PolynomialInvariants find_polynomial_invariants(const SigmaVariety& s, unsigned d, const SearchOptions& options) {
  return twisted_kernel(s, d, nullptr, options);
}

Poly darboux_residual(const SigmaVariety& s, const Poly& p, const Poly& cofactor, unsigned d) {
  Poly moved = substitute_cleared(p.embed(s.vars()).coeff_transform(s.field(), 1), s.phi().components(), d);
  return s.carrier().ideal().normal_form(moved - cofactor.embed(s.vars()) * p.embed(s.vars()));
}

DarbouxResult find_darboux_pairs(const SigmaVariety& s, unsigned d, unsigned c, const SearchOptions& options) {
  if (d < 1) fail(ErrorKind::InvalidArgument, "Darboux search needs degree >= 1");
  DarbouxResult out;
  const Vars& x = s.vars();
  const IdealRep& ideal = s.carrier().ideal();
  const auto& comps = s.phi().components();
  auto monos = standard_monomials(ideal, d);
  auto cmonos = standard_monomials(ideal, c);
  const bool semilinear = !s.field().is_autonomous();
  const unsigned D = semilinear ? ansatz_degree(options, d) : 0;
  std::vector<FieldElem> tm =
      semilinear ? generator_monomials(s.field(), D) : std::vector<FieldElem>{FieldElem(1)};
  const std::size_t nt = tm.size(), np = monos.size() * nt, nc = cmonos.size() * nt;
  if (np + nc > options.max_unknowns) {
    out.complete = false;
    out.notes.push_back("cofactor search skipped: " + std::to_string(np + nc) + " unknowns exceed the limit of " +
                        std::to_string(options.max_unknowns));
    return out;
  }

  std::set<std::string> taken(x.names().begin(), x.names().end());
  std::vector<std::string> pnames, cnames;
  for (std::size_t i = 0; i < np; ++i) pnames.push_back(fresh_name("_p" + std::to_string(i), taken));
  for (std::size_t i = 0; i < nc; ++i) cnames.push_back(fresh_name("_c" + std::to_string(i), taken));
  std::vector<std::string> unames = pnames;
  unames.insert(unames.end(), cnames.begin(), cnames.end());
  Vars u(unames), ring = x.concat(u);

  Poly pexpr(ring), psig(ring), cexpr(ring);
  for (std::size_t i = 0; i < monos.size(); ++i) {
    Poly xm = Poly::monomial(x, monos[i]);
    Poly pulled = substitute_cleared(xm, comps, d).embed(ring);
    for (std::size_t j = 0; j < nt; ++j) {
      Poly v = Poly::variable(ring, pnames[i * nt + j]);
      pexpr += (v * xm.embed(ring)).scaled(tm[j]);
      psig += (v * pulled).scaled(s.field().sigma_apply(tm[j], 1));
    }
  }
  for (std::size_t i = 0; i < cmonos.size(); ++i)
    for (std::size_t j = 0; j < nt; ++j)
      cexpr += (Poly::variable(ring, cnames[i * nt + j]) * Poly::monomial(x, cmonos[i]).embed(ring)).scaled(tm[j]);
  Poly e = psig - cexpr * pexpr;
  IdealRep lifted = ideal.embed(ring);
  Poly reduced = lifted.normal_form(e, MonomialOrder::elimination(x.size()));

  std::map<Exponent, Poly> by_x;
  for (const auto& [ex, coeff] : reduced.terms()) {
    Exponent xe(ex.begin(), ex.begin() + static_cast<std::ptrdiff_t>(x.size()));
    Exponent ue(ex.begin() + static_cast<std::ptrdiff_t>(x.size()), ex.end());
    auto [it, ins] = by_x.try_emplace(xe, Poly(u));
    it->second += Poly::monomial(u, ue, coeff);
  }
  std::vector<Poly> eqs;
  for (const auto& [xe, eq] : by_x) {
    if (!semilinear) {
      eqs.push_back(eq);
      continue;
    }
    MPoly l(1);
    for (const auto& [ue, coeff] : eq.terms()) l = lcm(l, coeff.den());
    std::map<SymMonomial, Poly, SymMonomialLess> split;
    for (const auto& [ue, coeff] : eq.terms()) {
      MPoly v = coeff.num() * *exact_divide(l, coeff.den());
      for (const auto& [tmono, q] : v.terms()) {
        auto [it, ins] = split.try_emplace(tmono, Poly(u));
        it->second += Poly::monomial(u, ue, FieldElem(q));
      }
    }
    for (auto& [tmono, p] : split) eqs.push_back(std::move(p));
  }

  std::vector<Poly> cofactors;
  std::set<std::string> seen_cof;
  const std::size_t one = nt - 1;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (total_degree(monos[k]) == 0) continue;
    std::vector<Poly> gens = eqs;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < nt; ++j) gens.push_back(Poly::variable(u, pnames[i * nt + j]));
    for (std::size_t j = 0; j < nt; ++j) {
      Poly v = Poly::variable(u, pnames[k * nt + j]);
      gens.push_back(j == one ? v - Poly(u, FieldElem(1)) : v);
    }
    try {
      IdealRep cideal = eliminate(IdealRep(u, std::move(gens), ideal.limits()), pnames);
      if (!cideal.is_zero() && cideal.is_unit()) continue;
      PointSet pts = rational_points(cideal);
      if (!pts.complete) {
        out.complete = false;
        out.notes.push_back("positive-dimensional or unsplit cofactor set in chart " +
                            Poly::monomial(x, monos[k]).to_string());
      }
      for (const auto& pt : pts.points) {
        Poly cof(x);
        for (std::size_t i = 0; i < cmonos.size(); ++i)
          for (std::size_t j = 0; j < nt; ++j)
            cof += Poly::monomial(x, cmonos[i], pt[i * nt + j] * tm[j]);
        if (seen_cof.insert(cof.to_string()).second) cofactors.push_back(cof);
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ResourceLimit) throw;
      out.complete = false;
      out.notes.push_back(std::string("budget exhausted in chart ") + Poly::monomial(x, monos[k]).to_string());
    }
  }

  Poly b = clearing_factor(s, d);
  std::set<std::string> seen_p;
  SearchOptions kernel_options = options;
  kernel_options.coeff_degree = D;
  for (const auto& cof : cofactors) {
    auto kernel = twisted_kernel(s, d, &cof, kernel_options);
    for (const auto& p : kernel.basis) {
      if (is_constant_mod(p)) continue;
      if (!seen_p.insert(p.to_string() + "|" + cof.to_string()).second) continue;
      DarbouxPair pair{p, cof, b, darboux_residual(s, p, cof, d)};
      if (pair.residual.is_zero()) out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

RationalInvariants find_rational_invariants(const SigmaVariety& s, unsigned d, const SearchOptions& options) {
  if (d < 1) fail(ErrorKind::InvalidArgument, "rational invariant search needs degree >= 1");
  RationalInvariants out;
  std::map<std::string, InvariantFunction> found;
  auto record = [&](const RatFunc& f) {
    if (f.is_constant()) return;
    if (found.count(key(f))) return;
    InvariantCheck check = verify_invariant(f, s);
    if (!check.holds) return;
    found.emplace(key(f), InvariantFunction{f, check.residual, true});
  };
  for (const auto& p : find_polynomial_invariants(s, d, options).basis) record(RatFunc(p));

  unsigned phi_degree = s.phi().degree();
  unsigned c = phi_degree > 0 ? d * (phi_degree - 1) : 0;
  DarbouxResult dar = find_darboux_pairs(s, d, c, options);
  out.complete = dar.complete;
  out.notes = dar.notes;
  std::map<std::string, std::vector<Poly>> classes;
  for (const auto& pair : dar.pairs) classes[pair.cofactor.to_string()].push_back(pair.p);
  for (const auto& [cof, ps] : classes)
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) record(RatFunc::make(ps[i], ps[j]));

  for (auto& [k, f] : found) out.invariants.push_back(std::move(f));
  std::stable_sort(out.invariants.begin(), out.invariants.end(), [](const auto& a, const auto& b) {
    return a.lambda.total_degree() < b.lambda.total_degree();
  });
  return out;
}

OrthogonalityProfile orthogonality_profile(const SigmaVariety& s, unsigned d, unsigned n_max,
                                           const SearchOptions& options) {
  if (n_max < 1) fail(ErrorKind::InvalidArgument, "orthogonality profile needs n_max >= 1");
  OrthogonalityProfile out;
  out.degree = d;
  out.n_max = n_max;
  for (unsigned n = 1; n <= n_max; ++n) {
    SigmaVariety power = cartesian_power(s, n);
    RationalInvariants r = find_rational_invariants(power, d, options);
    out.entries.push_back(PowerEntry{n, r.invariants, r.complete});
    if (!r.invariants.empty()) {
      out.first_hit = n;
      break;
    }
  }
  return out;
}

} // namespace sdyn

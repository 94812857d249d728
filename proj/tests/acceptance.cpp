// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include "fixtures.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/errors.hpp"
#include "sdyn/session.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace sdyn;
using namespace fixtures;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitE1Trivialization = 1.0;
constexpr double kLimitPresentation = 10.0;  // per fixture
constexpr double kLimitE4 = 10.0;
constexpr double kLimitPowerBound = 30.0;
constexpr double kLimitDME = 30.0;
constexpr double kLimitZDO = 30.0;
constexpr double kLimitOracle = 60.0;
constexpr double kLimitProperties = 60.0;
constexpr double kLimitNegative = 10.0;

std::string g_cli;
std::string g_fixtures;

struct Outcome {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Vars vx() { return Vars{"x"}; }
Poly X() { return Poly::variable(vx(), 0); }
Poly C(const FieldElem& c) { return Poly(vx(), c); }
FieldElem sym(const std::string& n) { return FieldElem::symbol(n); }

bool all_pass(const std::vector<Certificate>& cs, Outcome& o, const std::string& where) {
  bool ok = true;
  for (const auto& c : cs)
    if (!c.ok) {
      o.require(false, where + ": certificate " + c.name);
      ok = false;
    }
  return ok;
}

bool same_map(const std::vector<RatFunc>& a, const RatFunc& b) { return a.size() == 1 && a[0] == b; }

// Y with (y, z) -> (y, psi(z)); the fixture maps g are equivariant into it.
SigmaVariety fibre_product_target(const Trivialization& t) {
  const Vars& yv = t.y.vars();
  const RatFunc& psi = t.z.phi().components()[0];
  RatFunc z_image = RatFunc::make(psi.num().embed(yv), psi.den().embed(yv));
  return SigmaVariety(t.s.field(), t.y, {RatFunc::variable(yv, "y"), z_image});
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  auto t0 = Clock::now();
  auto rep = verify_trivialization(e1());
  o.require(rep.ok(), "verify_trivialization(E1) reported a failure");
  for (const auto& c : rep.checks)
    for (const auto& r : c.residuals) o.require(r == "0", "E1 residual " + r + " in " + c.name);
  double s = seconds_since(t0);
  o.require(s < kLimitE1Trivialization, "E1 trivialization took " + std::to_string(s) + " s");
}

void presentation_suite(Outcome& o, const std::string& name, const Trivialization& t, const ParamTuple& witness,
                        const std::function<void(const GroupPresentation&)>& extra) {
  auto t0 = Clock::now();
  GroupPresentation p = build_presentation(t, 3);
  o.require(p.w.size() == 1, name + ": chart is not 1-dimensional");
  all_pass(p.certificates, o, name);
  for (const char* needed : {"associativity", "identity", "inverse", "rho homomorphism", "intertwining",
                             "action equivariance"}) {
    bool present = false;
    for (const auto& c : p.certificates) present = present || c.name == needed;
    o.require(present, name + ": missing certificate " + needed);
  }
  o.require(verify_intertwining(t).ok, name + ": verify_intertwining");
  o.require(p.rho == ParamTuple{sym(p.w1[0])}, name + ": rho is not the identity");
  Witness w = translational_witness(t.s, p);
  o.require(w.check.ok, name + ": witness check");
  o.require(w.w == witness, name + ": witness " + (w.w.empty() ? "" : w.w[0].to_string()));
  extra(p);
  double s = seconds_since(t0);
  o.require(s < kLimitPresentation, name + " took " + std::to_string(s) + " s");
}

void criterion2(Outcome& o) {
  presentation_suite(o, "E1", e1(), {q(1)}, [&](const GroupPresentation& p) {
    FieldElem a = sym(p.w1[0]), b = sym(p.w2[0]);
    o.require(p.multiply == ParamTuple{a + b}, "E1 multiplication is not w1 + w2");
    o.require(same_map(p.theta_at({sym("w")}), RatFunc(X() + C(sym("w")))), "E1 theta is not x + w");
  });
  presentation_suite(o, "E2", e2(), {q(2)}, [&](const GroupPresentation& p) {
    FieldElem a = sym(p.w1[0]), b = sym(p.w2[0]);
    o.require(p.multiply == ParamTuple{a * b}, "E2 multiplication is not w1 w2");
    o.require(same_map(p.theta_at({sym("w")}), RatFunc(X().scaled(sym("w")))), "E2 theta is not w x");
  });
  presentation_suite(o, "Moebius", mobius(), {q(1)}, [&](const GroupPresentation& p) {
    auto theta = [&](const FieldElem& g) { return RatFunc::make(X(), X().scaled(g) + C(q(1))); };
    o.require(same_map(p.theta_at({sym("g")}), theta(sym("g"))), "Moebius theta is not x/(gx+1)");
    RatFunc inner = p.theta_at({sym("h")})[0];
    RationalMap th(AffineVariety::affine_space(vx()), AffineVariety::affine_space(vx()), {inner});
    RationalMap tg(AffineVariety::affine_space(vx()), AffineVariety::affine_space(vx()), p.theta_at({sym("g")}));
    o.require(compose(tg, th).components()[0] == theta(sym("g") + sym("h")), "theta_g o theta_h != theta_(g+h)");
    FieldElem a = sym(p.w1[0]), b = sym(p.w2[0]);
    o.require(p.multiply == ParamTuple{a + b}, "Moebius multiplication is not g + h");
  });
}

void criterion3(Outcome& o) {
  auto t0 = Clock::now();
  Trivialization tr = e4();
  PolynomialInvariants inv = find_polynomial_invariants(tr.s, 1);
  o.require(inv.basis.size() == 2, "E4 invariant space has dimension " + std::to_string(inv.basis.size()));
  Poly target = X().scaled(q(2)) - C(t() * t()) + C(t());
  o.require(verify_invariant(RatFunc(target), tr.s).holds, "2x - t^2 + t is not invariant");
  bool in_span = false;
  for (const auto& b : inv.basis) {
    FieldElem lead = b.coefficient({1});
    if (lead.is_zero()) continue;
    Poly rest = target - b.scaled(FieldElem(2) / lead);
    in_span = rest.is_constant() && rest.constant_term().is_rational();
  }
  o.require(in_span, "2x - t^2 + t is not in the returned span");

  Vars vz{"z"};
  RatFunc lambda(Poly::variable(vz, 0).scaled(q(2)) - Poly(vz, t() * t() - t()));
  GroupPresentation p = build_presentation(tr, 1, {lambda});
  all_pass(p.certificates, o, "E4");
  o.require(p.h_trivial && p.h_dimension == 0, "H_Lambda is not trivial");
  SharpSolution sol = sharp_solve_affine(p, 2);
  bool constants = sol.solvable;
  for (const auto& c : sol.particular) constants = constants && c.is_rational();
  for (const auto& d : sol.directions)
    for (const auto& c : d) constants = constants && c.is_rational();
  o.require(constants, "sharp_solve_affine returned a nonconstant solution");
  double s = seconds_since(t0);
  o.require(s < kLimitE4, "E4 took " + std::to_string(s) + " s");
}

void criterion4(Outcome& o) {
  auto t0 = Clock::now();
  struct Case {
    std::string name;
    SigmaVariety s;
    unsigned expected;
    std::string invariant;
  };
  std::vector<Case> cases = {{"E1", e1().s, 2, "x_1 - x_2"}, {"E2", e2().s, 2, "x_1/x_2"}, {"E4", e4().s, 1, ""}};
  for (const auto& c : cases) {
    PowerBoundReport r = power_bound_report(c.s, 1);
    o.require(r.profile.first_hit == c.expected, c.name + ": first nonconstant invariant at the wrong power");
    o.require(r.verified, c.name + ": invariants did not re-verify");
    o.require(r.verdict == "PASS", c.name + ": verdict " + r.verdict);
    o.require(r.bound == 4, c.name + ": bound is not dim V + 3");
    if (!c.invariant.empty() && r.profile.first_hit) {
      bool found = false;
      for (const auto& e : r.profile.entries)
        for (const auto& f : e.found) found = found || f.lambda.to_string() == c.invariant;
      o.require(found, c.name + ": " + c.invariant + " not found");
    }
  }
  double s = seconds_since(t0);
  o.require(s < kLimitPowerBound, "power bounds took " + std::to_string(s) + " s");
}

void criterion5(Outcome& o) {
  auto t0 = Clock::now();
  Vars v{"x"}, v2{"x", "y"};
  auto line = AffineVariety::affine_space(v), plane = AffineVariety::affine_space(v2);
  Poly x = Poly::variable(v, 0);

  DMEReport a = dme_enumerate(SigmaVariety({}, line, {RatFunc(x + Poly(v, q(1)))}), 3, 1, 5);
  o.require(a.hypersurfaces.empty() && a.points.empty(), "(A1, x+1) has invariant subvarieties");
  o.require(!a.infinitely_many, "(A1, x+1) reported infinitely many");

  DMEReport b = dme_enumerate(SigmaVariety({}, line, {RatFunc(x.scaled(q(2)))}), 3, 1, 5);
  bool only_origin = b.hypersurfaces.size() == 1 && b.hypersurfaces[0].p == x && b.points.empty();
  o.require(only_origin, "(A1, 2x) did not return exactly {x = 0}");

  Poly px = Poly::variable(v2, 0), py = Poly::variable(v2, 1);
  DMEReport c = dme_enumerate(SigmaVariety({}, plane, {RatFunc(px.scaled(q(2))), RatFunc(py.scaled(q(2)))}), 1, 0, 5);
  o.require(c.level_function && (c.level_function->to_string() == "x/y" || c.level_function->to_string() == "y/x"),
            "(A2, (2x, 2y)) level function is not x/y");
  o.require(c.level_sets.size() >= 5, "fewer than 5 level sets");
  for (std::size_t i = 0; i < c.level_sets.size(); ++i) {
    o.require(c.level_sets[i].total_degree() == 1, "level set is not a line");
    for (std::size_t j = 0; j < i; ++j)
      o.require(!same_ideal(IdealRep(v2, {c.level_sets[i]}), IdealRep(v2, {c.level_sets[j]})), "repeated level set");
  }
  o.require(c.verdict == "INFINITE", "(A2, (2x, 2y)) verdict " + c.verdict);
  double s = seconds_since(t0);
  o.require(s < kLimitDME, "DME checks took " + std::to_string(s) + " s");
}

void criterion6(Outcome& o) {
  auto t0 = Clock::now();
  for (unsigned d = 0; d <= 5; ++d) {
    auto a = zdo_orbit_density(e1().s, {q(0)}, d, 20);
    o.require(a.dense && a.ranks.back() == d + 1, "E1 at 0 not dense at degree " + std::to_string(d));
    auto b = zdo_orbit_density(e2().s, {q(1)}, d, 20);
    o.require(b.dense && b.ranks.back() == d + 1, "E2 at 1 not dense at degree " + std::to_string(d));
  }
  auto z = zdo_orbit_density(e2().s, {q(0)}, 1, 20);
  o.require(!z.dense && z.vanishing.size() == 1 && z.vanishing[0] == X(), "E2 at 0 does not vanish on x");
  double s = seconds_since(t0);
  o.require(s < kLimitZDO, "orbit checks took " + std::to_string(s) + " s");
}

// ---------------------------------------------------------------------------
// Dense oracle for criterion 7: polynomials in at most two variables as
// exponent -> rational maps, composition by repeated multiplication, and a
// Gauss-Jordan kernel.

using Mono = std::array<int, 2>;
using Dense = std::map<Mono, mpq_class>;

Dense dmul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea[0] + eb[0], ea[1] + eb[1]}] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Dense dpow(const Dense& a, int e) {
  Dense out{{{0, 0}, 1}};
  for (int i = 0; i < e; ++i) out = dmul(out, a);
  return out;
}

using QMatrix = std::vector<std::vector<mpq_class>>;

void gauss_jordan(QMatrix& m, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::size_t row = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != row && m[r][c] != 0) {
        mpq_class f = m[r][c];
        for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
      }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
}

QMatrix oracle_kernel(const std::vector<Dense>& phi, const std::vector<Mono>& monos) {
  std::vector<Dense> cols;
  for (const auto& m : monos) {
    Dense img = dpow(phi[0], m[0]);
    if (phi.size() > 1) img = dmul(img, dpow(phi[1], m[1]));
    img[m] -= 1;
    cols.push_back(img);
  }
  std::map<Mono, std::size_t> row_of;
  for (const auto& c : cols)
    for (const auto& [e, v] : c)
      if (v != 0) row_of.try_emplace(e, 0);
  std::size_t r = 0;
  for (auto& [e, idx] : row_of) idx = r++;
  QMatrix a(row_of.size(), std::vector<mpq_class>(monos.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [e, v] : cols[j])
      if (v != 0) a[row_of[e]][j] = v;
  std::vector<std::size_t> piv;
  gauss_jordan(a, piv);
  std::vector<bool> is_pivot(monos.size(), false);
  for (auto p : piv) is_pivot[p] = true;
  QMatrix ker;
  for (std::size_t f = 0; f < monos.size(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> v(monos.size());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
    ker.push_back(v);
  }
  gauss_jordan(ker, piv);
  return ker;
}

void criterion7(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> coeff(-3, 3), coin(0, 1);
  const unsigned d = 2;
  int accepted = 0, nontrivial = 0;
  for (int attempt = 0; accepted < 10 && attempt < 200; ++attempt) {
    std::size_t n = accepted < 4 ? 1 : 2;
    std::vector<Mono> map_monos;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j)
        if (n == 2 || j == 0) map_monos.push_back({i, j});
    std::vector<Dense> phi(n);
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& m : map_monos) {
        int c = coeff(rng);
        if (c) phi[k][m] = c;
      }
    // Half of the plane maps are skew products x -> x, which have invariants.
    if (n == 2 && coin(rng)) phi[0] = Dense{{{1, 0}, 1}};

    Vars vars = n == 1 ? Vars{"x"} : Vars{"x", "y"};
    std::vector<RatFunc> comps;
    for (const auto& f : phi) {
      Poly p(vars);
      for (const auto& [e, c] : f) {
        Exponent ex(n);
        for (std::size_t i = 0; i < n; ++i) ex[i] = static_cast<std::uint16_t>(e[i]);
        p += Poly::monomial(vars, ex, FieldElem(Rational(c)));
      }
      comps.emplace_back(p);
    }
    std::optional<SigmaVariety> s;
    try {
      s.emplace(DifferenceField{}, AffineVariety::affine_space(vars), comps);
    } catch (const Error&) {
      continue;  // not dominant
    }
    ++accepted;

    std::vector<Mono> monos;
    for (unsigned i = 0; i <= d; ++i)
      for (unsigned j = 0; i + j <= d; ++j)
        if (n == 2 || j == 0) monos.push_back({static_cast<int>(i), static_cast<int>(j)});
    QMatrix expected = oracle_kernel(phi, monos);

    PolynomialInvariants got = find_polynomial_invariants(*s, d);
    QMatrix actual;
    for (const auto& b : got.basis) {
      std::vector<mpq_class> row(monos.size());
      for (const auto& [e, c] : b.terms()) {
        Mono m{e[0], n == 2 ? e[1] : 0};
        auto it = std::find(monos.begin(), monos.end(), m);
        if (it == monos.end() || !c.is_rational()) {
          o.require(false, "library basis has an unexpected term");
          continue;
        }
        row[static_cast<std::size_t>(it - monos.begin())] = c.rational_value();
      }
      actual.push_back(row);
    }
    std::vector<std::size_t> piv;
    gauss_jordan(actual, piv);
    std::string label = "map " + std::to_string(accepted);
    o.require(expected.size() == got.basis.size(), label + ": kernel dimensions differ");
    o.require(expected == actual, label + ": reduced bases differ");
    if (expected.size() > 1) ++nontrivial;
  }
  o.require(accepted == 10, "could not draw 10 dominant maps");
  o.require(nontrivial > 0, "no sample had a nonconstant invariant");
  double s = seconds_since(t0);
  o.require(s < kLimitOracle, "oracle comparison took " + std::to_string(s) + " s");
}

// ---------------------------------------------------------------------------

FieldElem random_elem(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-5, 5), deg(0, 2);
  auto poly = [&] {
    FieldElem p(0);
    int k = deg(rng);
    for (int i = 0; i <= k; ++i) p += FieldElem(c(rng)) * t().pow(i);
    return p;
  };
  FieldElem den = poly();
  while (den.is_zero()) den = poly();
  return poly() / den;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion8(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937 rng(99);
  DifferenceField k = shift();
  for (int i = 0; i < 100; ++i) {
    FieldElem a = random_elem(rng), b = random_elem(rng);
    o.require(k.sigma_apply(a + b, 1) == k.sigma_apply(a, 1) + k.sigma_apply(b, 1), "sigma(a+b)");
    o.require(k.sigma_apply(a * b, 1) == k.sigma_apply(a, 1) * k.sigma_apply(b, 1), "sigma(ab)");
    o.require(k.sigma_apply(k.sigma_apply(a, 1), -1) == a, "sigma^-1 sigma");
    o.require(k.sigma_apply(FieldElem(i), 1) == FieldElem(i), "sigma fixes Q");
  }

  // Canonical forms: multiplying through by a common factor is invisible.
  std::uniform_int_distribution<int> c(-4, 4);
  for (int i = 0; i < 50; ++i) {
    Poly num = X().pow(2).scaled(FieldElem(c(rng))) + C(FieldElem(c(rng)));
    Poly den = X() + C(FieldElem(c(rng) + 10));
    Poly common = X().scaled(FieldElem(c(rng) == 0 ? 1 : 2)) + C(random_elem(rng));
    RatFunc a = RatFunc::make(num, den), b = RatFunc::make(num * common, den * common);
    o.require(a == b && a.to_string() == b.to_string(), "canonical form of " + a.to_string());
  }

  for (auto [name, tr] : std::vector<std::pair<std::string, Trivialization>>{
           {"E1", e1()}, {"E2", e2()}, {"Moebius", mobius()}, {"E4", e4()}}) {
    SigmaVariety src = product(tr.s, tr.z), dst = fibre_product_target(tr);
    o.require(is_equivariant(tr.g, src, dst), name + ": g is not equivariant");
    o.require(is_invariant_subvariety(graph(tr.g), product(src, dst)), name + ": graph of g is not invariant");
  }

  std::uniform_int_distribution<int> dd(-9, 9), nz(1, 9);
  auto pair = [](const FieldElem& a, const FieldElem& b) { return GroupParam{{a}, {b}, 0}; };
  for (int trial = 0; trial < 50; ++trial) {
    bool additive = trial % 2 == 0;
    auto tr = additive ? e1() : e2();
    auto draw = [&] { return additive ? q(dd(rng)) : q(nz(rng) * (dd(rng) < 0 ? -1 : 1)); };
    auto w1 = pair(draw(), draw()), w2 = pair(draw(), draw());
    FieldElem m = draw();
    auto moved = [&](const GroupParam& w) {
      return additive ? pair(w.e[0] + m, w.e2[0] + m) : pair(w.e[0] * m, w.e2[0] * m);
    };
    o.require(params_equivalent(tr, group_multiply(tr, w1, w2), group_multiply(tr, moved(w1), moved(w2))),
              "E-congruence trial " + std::to_string(trial));
  }

  for (const char* name : {"e1.sdyn", "e2.sdyn", "e4.sdyn", "mobius.sdyn", "plane.sdyn"}) {
    std::string text = slurp(g_fixtures + "/" + name);
    auto a = run_script(text), b = run_script(text);
    bool same = a.reports.size() == b.reports.size() && !a.reports.empty();
    for (std::size_t i = 0; same && i < a.reports.size(); ++i)
      same = a.reports[i].to_json(false).dump() == b.reports[i].to_json(false).dump();
    o.require(same, std::string("reports for ") + name + " differ between runs");
  }
  double s = seconds_since(t0);
  o.require(s < kLimitProperties, "property suites took " + std::to_string(s) + " s");
}

void criterion9(Outcome& o) {
  auto t0 = Clock::now();
  Trivialization tr = broken();
  SigmaVariety src = product(tr.s, tr.z), dst = fibre_product_target(tr);
  o.require(!is_equivariant(tr.g, src, dst), "broken g is equivariant");
  auto rep = verify_trivialization(tr);
  bool nonzero = false;
  for (const auto& c : rep.checks)
    if (c.name == "equivariant") {
      o.require(!c.ok, "equivariance certificate passed");
      for (const auto& r : c.residuals) nonzero = nonzero || r != "0";
    }
  o.require(nonzero, "equivariance residuals are all zero");
  Certificate inter = verify_intertwining(tr);
  bool inter_nonzero = false;
  for (const auto& r : inter.residuals) inter_nonzero = inter_nonzero || r != "0";
  o.require(!inter.ok && inter_nonzero, "verify_intertwining did not fail with a nonzero residual");

  std::string cmd = "'" + g_cli + "' run '" + g_fixtures + "/broken.sdyn' > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  int code = rc == -1 ? -1 : WEXITSTATUS(rc);
  o.require(code == kCheckFailed, "sigma-dyn exit code " + std::to_string(code));
  double s = seconds_since(t0);
  o.require(s < kLimitNegative, "negative controls took " + std::to_string(s) + " s");
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance SIGMA_DYN FIXTURE_DIR\n";
    return 64;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];
  const std::vector<std::pair<std::string, void (*)(Outcome&)>> criteria = {
      {"1 E1 trivialization", criterion1},        {"2 binding groups of E1, E2, Moebius", criterion2},
      {"3 nonautonomous E4", criterion3},         {"4 power bounds", criterion4},
      {"5 DME desk checks", criterion5},          {"6 ZDO desk checks", criterion6},
      {"7 dense oracle agreement", criterion7},   {"8 property suites", criterion8},
      {"9 negative controls", criterion9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3f s", seconds_since(t0));
    std::cout << (o.failures.empty() ? "PASS" : "FAIL") << "  criterion " << name << "  (" << elapsed << ")\n";
    for (const auto& f : o.failures) std::cout << "      " << f << "\n";
    failed += o.failures.empty() ? 0 : 1;
  }
  return failed;
}

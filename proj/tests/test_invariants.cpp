#include <doctest.h>

#include "sdyn/errors.hpp"
#include "sdyn/invariants.hpp"

using namespace sdyn;

namespace {

FieldElem t() { return FieldElem::symbol("t"); }
FieldElem q(long n, long d = 1) { return FieldElem(Rational(n, d)); }
DifferenceField shift() { return DifferenceField({"t"}, {t() + q(1)}, {t() - q(1)}); }

SigmaVariety on_line(const std::function<RatFunc(const Poly&)>& phi, DifferenceField k = {}) {
  Vars v{"x"};
  return SigmaVariety(k, AffineVariety::affine_space(v), {phi(Poly::variable(v, 0))});
}

SigmaVariety on_plane(const std::function<std::vector<RatFunc>(const Poly&, const Poly&)>& phi) {
  Vars v{"x", "y"};
  return SigmaVariety({}, AffineVariety::affine_space(v), phi(Poly::variable(v, 0), Poly::variable(v, 1)));
}

Poly one(const Poly& x) { return Poly(x.vars(), q(1)); }

} // namespace

TEST_CASE("verify_invariant") {
  auto e4 = on_line([](const Poly& x) { return RatFunc(x + Poly(x.vars(), t())); }, shift());
  Vars v{"x"};
  auto x = Poly::variable(v, 0);
  CHECK(verify_invariant(RatFunc(Poly(v, q(3))), e4).holds);
  // lambda = x - t(t-1)/2; by hand: lambda^sigma(x+t) = x + t - (t+1)t/2 = lambda.
  auto lambda = RatFunc(x - Poly(v, t() * (t() - q(1)) / q(2)));
  auto check = verify_invariant(lambda, e4);
  CHECK(check.holds);
  CHECK(check.residual.is_zero());
  auto e1 = on_line([](const Poly& x) { return RatFunc(x + one(x)); });
  CHECK_FALSE(verify_invariant(RatFunc(x), e1).holds);
}

TEST_CASE("polynomial invariants") {
  auto e2 = on_line([](const Poly& x) { return RatFunc(x.scaled(q(2))); });
  auto r = find_polynomial_invariants(e2, 2);
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis[0].is_constant());

  auto tr = on_plane([](const Poly& x, const Poly& y) {
    return std::vector<RatFunc>{RatFunc(x + one(x)), RatFunc(y + one(y))};
  });
  auto r2 = find_polynomial_invariants(tr, 1);
  REQUIRE(r2.basis.size() == 2);
  Vars v{"x", "y"};
  CHECK(r2.basis[0] == Poly::variable(v, 0) - Poly::variable(v, 1));
  CHECK(r2.basis[1] == Poly(v, q(1)));

  auto e4 = on_line([](const Poly& x) { return RatFunc(x + Poly(x.vars(), t())); }, shift());
  auto r4 = find_polynomial_invariants(e4, 1);
  CHECK(r4.semilinear);
  REQUIRE(r4.basis.size() == 2);
  Vars vx{"x"};
  Poly expected = Poly::variable(vx, 0).scaled(q(2)) - Poly(vx, t() * t() - t());
  CHECK(r4.basis[0].scaled(q(2)) == expected);
  for (const auto& p : r4.basis) CHECK(verify_invariant(RatFunc(p), e4).holds);
}

TEST_CASE("Darboux pairs") {
  auto e2 = on_line([](const Poly& x) { return RatFunc(x.scaled(q(2))); });
  auto r = find_darboux_pairs(e2, 1, 0);
  CHECK(r.complete);
  REQUIRE(r.pairs.size() == 1);
  Vars v{"x"};
  CHECK(r.pairs[0].p == Poly::variable(v, 0));
  CHECK(r.pairs[0].cofactor == Poly(v, q(2)));

  auto e1 = on_line([](const Poly& x) { return RatFunc(x + one(x)); });
  auto r1 = find_darboux_pairs(e1, 3, 1);
  CHECK(r1.pairs.empty());
  CHECK(r1.complete);

  auto mob = on_line([](const Poly& x) { return RatFunc::make(x, x + one(x)); });
  auto rm = find_darboux_pairs(mob, 1, 0);
  bool has_x = false;
  for (const auto& p : rm.pairs)
    if (p.p == Poly::variable(v, 0)) {
      has_x = true;
      CHECK(p.cofactor == Poly(v, q(1)));
      CHECK(p.residual.is_zero());
    }
  CHECK(has_x);
}

TEST_CASE("rational invariants") {
  auto e2 = on_line([](const Poly& x) { return RatFunc(x.scaled(q(2))); });
  CHECK(find_rational_invariants(e2, 2).invariants.empty());
  auto e1 = on_line([](const Poly& x) { return RatFunc(x + one(x)); });
  CHECK(find_rational_invariants(e1, 3).invariants.empty());
  auto sc = on_plane([](const Poly& x, const Poly& y) {
    return std::vector<RatFunc>{RatFunc(x.scaled(q(2))), RatFunc(y.scaled(q(2)))};
  });
  auto r = find_rational_invariants(sc, 1);
  REQUIRE_FALSE(r.invariants.empty());
  Vars v{"x", "y"};
  auto target = RatFunc::make(Poly::variable(v, 0), Poly::variable(v, 1));
  bool found = false;
  for (const auto& f : r.invariants) {
    CHECK(verify_invariant(f.lambda, sc).holds);
    if (f.lambda == target || f.lambda == RatFunc::make(Poly::variable(v, 1), Poly::variable(v, 0))) found = true;
  }
  CHECK(found);
}

TEST_CASE("orthogonality profiles") {
  auto e1 = on_line([](const Poly& x) { return RatFunc(x + one(x)); });
  auto p1 = orthogonality_profile(e1, 2, 4);
  REQUIRE(p1.first_hit.has_value());
  CHECK(*p1.first_hit == 2);
  Vars v{"x_1", "x_2"};
  CHECK(p1.entries.back().found.front().lambda == RatFunc(Poly::variable(v, 0) - Poly::variable(v, 1)));

  auto e2 = on_line([](const Poly& x) { return RatFunc(x.scaled(q(2))); });
  auto p2 = orthogonality_profile(e2, 2, 4);
  REQUIRE(p2.first_hit.has_value());
  CHECK(*p2.first_hit == 2);
  CHECK(p2.entries.back().found.front().lambda == RatFunc::make(Poly::variable(v, 0), Poly::variable(v, 1)));

  auto e4 = on_line([](const Poly& x) { return RatFunc(x + Poly(x.vars(), t())); }, shift());
  auto p4 = orthogonality_profile(e4, 1, 4);
  REQUIRE(p4.first_hit.has_value());
  CHECK(*p4.first_hit == 1);
}

TEST_CASE("property: pullbacks of invariants stay invariant") {
  // g(x, z) = (x - z, z) from (x+1, z+1) to (y, z+1); lambda = y on the target.
  Vars xz{"x", "z"}, yz{"y", "z"};
  auto src = SigmaVariety({}, AffineVariety::affine_space(xz),
                          {RatFunc(Poly::variable(xz, 0) + Poly(xz, q(1))),
                           RatFunc(Poly::variable(xz, 1) + Poly(xz, q(1)))});
  auto dst = SigmaVariety({}, AffineVariety::affine_space(yz),
                          {RatFunc(Poly::variable(yz, 0)), RatFunc(Poly::variable(yz, 1) + Poly(yz, q(1)))});
  auto lambda = RatFunc(Poly::variable(yz, 0));
  REQUIRE(verify_invariant(lambda, dst).holds);
  auto pulled = substitute(lambda, {RatFunc(Poly::variable(xz, 0) - Poly::variable(xz, 1)),
                                    RatFunc(Poly::variable(xz, 1))});
  CHECK(verify_invariant(pulled, src).holds);
}

#include <doctest.h>

#include "sdyn/errors.hpp"
#include "sdyn/field.hpp"
#include "sdyn/linalg.hpp"
#include "sdyn/poly.hpp"

#include <random>

using namespace sdyn;

namespace {

FieldElem sym(const char* s) { return FieldElem::symbol(s); }

DifferenceField shift_field() { return DifferenceField({"t"}, {sym("t") + FieldElem(1)}, {sym("t") - FieldElem(1)}); }

// Random polynomial in t with small integer coefficients.
FieldElem random_poly_t(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> c(-5, 5);
  FieldElem r(0), tp(1);
  for (int i = 0; i <= deg; ++i) {
    r += tp * FieldElem(c(rng));
    tp *= sym("t");
  }
  return r;
}

} // namespace

TEST_CASE("mpoly gcd recovers a planted common factor") {
  MPoly x = MPoly::symbol("x"), y = MPoly::symbol("y");
  MPoly g = x * y + 1;
  MPoly a = g * (x - y), b = g * (x + y * y);
  CHECK(gcd(a, b) == make_monic(g));
  CHECK(gcd(x * x - 1, x - 1) == x - 1);
  CHECK(gcd(x, y) == MPoly(1));
}

TEST_CASE("field elements reduce") {
  MPoly x = MPoly::symbol("x"), t = MPoly::symbol("t");
  CHECK(FieldElem::fraction(x * x - 1, x - 1) == FieldElem(x + 1));
  CHECK(FieldElem::fraction(x.scaled(2), MPoly(4)) == FieldElem(x.scaled(Rational(1, 2))));
  CHECK(FieldElem::fraction(t * x, t) == FieldElem(x));
  CHECK_THROWS_AS(FieldElem::fraction(x, MPoly()), Error);
}

TEST_CASE("shift difference field") {
  auto k = shift_field();
  FieldElem t = sym("t");
  CHECK(k.sigma_apply(t * t, 1) == (t + FieldElem(1)) * (t + FieldElem(1)));
  CHECK(k.sigma_apply(t, -1) == t - FieldElem(1));
  CHECK(k.sigma_apply(t, 3) == t + FieldElem(3));
  CHECK_FALSE(k.is_autonomous());
  CHECK(k.is_fixed(FieldElem(Rational(7, 3))));
  CHECK_FALSE(k.is_fixed(t));
}

TEST_CASE("invalid sigma inverse is rejected") {
  CHECK_THROWS_AS(DifferenceField({"t"}, {sym("t") + FieldElem(1)}, {sym("t") + FieldElem(1)}), Error);
}

TEST_CASE("property: sigma is a field homomorphism") {
  auto k = shift_field();
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    FieldElem a = random_poly_t(rng, 3), b = random_poly_t(rng, 2);
    FieldElem c = random_poly_t(rng, 2);
    if (c.is_zero()) c = FieldElem(1);
    FieldElem q = a / c;
    CHECK(k.sigma_apply(a + b, 1) == k.sigma_apply(a, 1) + k.sigma_apply(b, 1));
    CHECK(k.sigma_apply(a * b, 1) == k.sigma_apply(a, 1) * k.sigma_apply(b, 1));
    CHECK(k.sigma_apply(q, 1) == k.sigma_apply(a, 1) / k.sigma_apply(c, 1));
    CHECK(k.sigma_apply(k.sigma_apply(q, 1), -1) == q);
  }
}

TEST_CASE("rational functions in variables reduce") {
  Vars v{"x", "y"};
  auto x = Poly::variable(v, "x"), y = Poly::variable(v, "y");
  Poly one(v, FieldElem(1));
  auto f = RatFunc::make(x * x - one, x - one);
  CHECK(f.is_polynomial());
  CHECK(f.num() == x + one);
  auto g = RatFunc::make(x.scaled(sym("t")), (x * y).scaled(sym("t")));
  CHECK(g.num() == one);
  CHECK(g.den() == y);
  CHECK_THROWS_AS(RatFunc::make(x, Poly(v)), Error);
}

TEST_CASE("substitution composes polynomials") {
  Vars v{"x"};
  auto x = Poly::variable(v, "x");
  Poly one(v, FieldElem(1));
  // (x+1)^2 evaluated at x -> x/(x+1)
  auto r = substitute(x * x + x.scaled(2) + one, {RatFunc::make(x, x + one)});
  auto expected = RatFunc::make((x.scaled(2) + one) * (x.scaled(2) + one), (x + one) * (x + one));
  CHECK(r == expected);
  auto cleared = substitute_cleared(x * x, {RatFunc::make(x, x + one)}, 2);
  CHECK(cleared == x * x);
}

TEST_CASE("grevlex enumeration") {
  auto ms = monomials_up_to(2, 2);
  REQUIRE(ms.size() == 6);
  CHECK(ms.front() == Exponent{2, 0});
  CHECK(ms.back() == Exponent{0, 0});
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(MonomialOrder::grevlex().compare(ms[i - 1], ms[i]) > 0);
}

TEST_CASE("parallel rref agrees with the serial reference") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 3 + trial % 5, cols = 4 + trial % 3;
    linalg::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < cols; ++k) m(r, k) = FieldElem(c(rng)) + (k == 0 ? sym("t") : FieldElem(0));
    auto a = linalg::rref(m), b = linalg::rref_serial(m);
    CHECK(a.reduced == b.reduced);
    CHECK(a.pivots == b.pivots);
    for (const auto& v : linalg::kernel(m))
      for (std::size_t r = 0; r < rows; ++r) {
        FieldElem s(0);
        for (std::size_t k = 0; k < cols; ++k) s += m(r, k) * v[k];
        CHECK(s.is_zero());
      }
  }
}

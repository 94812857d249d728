#include <doctest.h>

#include "sdyn/errors.hpp"
#include "sdyn/ideal.hpp"

#include <algorithm>
#include <random>

using namespace sdyn;

namespace {

struct Ring {
  Vars v;
  explicit Ring(std::vector<std::string> names) : v(std::move(names)) {}
  Poly operator()(const char* n) const { return Poly::variable(v, n); }
  Poly c(Rational q) const { return Poly(v, FieldElem(q)); }
};

} // namespace

TEST_CASE("textbook grevlex basis") {
  Ring r({"x", "y"});
  auto x = r("x"), y = r("y");
  auto gb = groebner({x.pow(3) - (x * y).scaled(2), x * x * y - (y * y).scaled(2) + x}, MonomialOrder::grevlex());
  std::vector<Poly> expected{x * x, x * y, y * y - x.scaled(Rational(1, 2))};
  CHECK(gb == expected);
}

TEST_CASE("lex basis of a triangular system") {
  Ring r({"x", "y"});
  auto x = r("x"), y = r("y");
  auto gb = groebner({x * x + y * y - r.c(1), x - y}, MonomialOrder::lex());
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == x - y);
  CHECK(gb[1] == y * y - r.c(Rational(1, 2)));
}

TEST_CASE("unit ideal and budget") {
  Ring r({"x", "y"});
  auto x = r("x"), y = r("y");
  IdealRep i(r.v, {x * y - r.c(1), x});
  CHECK(i.is_unit());
  CHECK(dimension(i) == -1);
  Limits tiny{1};
  IdealRep hard(r.v, {x.pow(3) - y.pow(2) + x, x * x * y - y.pow(3) + r.c(2), x * y.pow(3) - x + y}, tiny);
  CHECK_THROWS_AS(hard.basis(), Error);
}

TEST_CASE("elimination gives the implicit twisted cubic") {
  Ring src({"s"});
  Ring dst({"x", "y", "z"});
  auto s = src("s");
  auto img = image_closure({RatFunc(s), RatFunc(s * s), RatFunc(s.pow(3))}, IdealRep::zero(src.v), dst.v);
  auto x = dst("x"), y = dst("y"), z = dst("z");
  CHECK(img.contains(y - x * x));
  CHECK(img.contains(z - x.pow(3)));
  CHECK(img.contains(y * y - x * z));
  CHECK_FALSE(img.contains(y - x));
  CHECK(dimension(img) == 1);
  CHECK(same_ideal(img, IdealRep(dst.v, {y - x * x, z - x * y})));
}

TEST_CASE("image closure of a rational parametrization") {
  Ring src({"s"});
  Ring dst({"x", "y"});
  auto s = src("s");
  Poly one = src.c(1);
  // s -> ((1-s^2)/(1+s^2), 2s/(1+s^2)) traces the unit circle.
  auto den = one + s * s;
  auto img = image_closure({RatFunc::make(one - s * s, den), RatFunc::make(s.scaled(2), den)}, IdealRep::zero(src.v),
                           dst.v);
  auto x = dst("x"), y = dst("y");
  CHECK(same_ideal(img, IdealRep(dst.v, {x * x + y * y - dst.c(1)})));
}

TEST_CASE("map undefined on the source is rejected") {
  Ring src({"s"});
  Ring dst({"x"});
  auto s = src("s");
  CHECK_THROWS_AS(image_closure({RatFunc::make(src.c(1), s)}, IdealRep(src.v, {s}), dst.v), Error);
}

TEST_CASE("saturation removes an embedded component") {
  Ring r({"x", "y"});
  auto x = r("x"), y = r("y");
  IdealRep i(r.v, {x * y, x * x});
  auto sat = saturate(i, x);
  CHECK(sat.is_unit());
  IdealRep j(r.v, {x * y});
  CHECK(same_ideal(saturate(j, x), IdealRep(r.v, {y})));
}

TEST_CASE("dimension and standard monomials") {
  Ring r({"x", "y", "z"});
  auto x = r("x"), y = r("y"), z = r("z");
  CHECK(dimension(IdealRep::zero(r.v)) == 3);
  CHECK(dimension(IdealRep(r.v, {x * y})) == 2);
  CHECK(dimension(IdealRep(r.v, {x, y * z - r.c(1)})) == 1);
  IdealRep pt(r.v, {x - r.c(1), y - r.c(2), z});
  CHECK(dimension(pt) == 0);
  CHECK(standard_monomials(pt, 3).size() == 1);
  auto sm = standard_monomials(IdealRep(r.v, {z}), 2);
  CHECK(sm.size() == 6);
}

TEST_CASE("coefficients in a function field") {
  Ring r({"x", "y"});
  auto x = r("x"), y = r("y");
  FieldElem t = FieldElem::symbol("t");
  IdealRep i(r.v, {x.scaled(t) - y, y * y - r.c(1)});
  CHECK(i.contains(x * x.scaled(t * t) - r.c(1)));
  CHECK(i.contains(x * x - Poly(r.v, (t * t).inverse())));
  CHECK(dimension(i) == 0);
}

TEST_CASE("property: basis does not depend on generator order or redundancy") {
  Ring r({"x", "y", "z"});
  auto x = r("x"), y = r("y"), z = r("z");
  std::vector<Poly> gens{x * y - z, y * z - x, x * z - y * y};
  auto ref = groebner(gens, MonomialOrder::grevlex());
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Poly combo = shuffled[0].scaled(FieldElem(c(rng))) + shuffled[1] * (x.scaled(FieldElem(c(rng))) + r.c(c(rng)));
    shuffled.push_back(combo);
    CHECK(groebner(shuffled, MonomialOrder::grevlex()) == ref);
    CHECK(IdealRep(r.v, shuffled).contains(combo * z));
  }
}

#include <doctest.h>

#include "sdyn/errors.hpp"
#include "sdyn/solve.hpp"
#include "sdyn/variety.hpp"

using namespace sdyn;

namespace {

FieldElem t() { return FieldElem::symbol("t"); }
FieldElem q(long n, long d = 1) { return FieldElem(Rational(n, d)); }

DifferenceField trivial() { return DifferenceField(); }
DifferenceField shift() { return DifferenceField({"t"}, {t() + q(1)}, {t() - q(1)}); }

Poly var(const Vars& v, const char* n) { return Poly::variable(v, n); }
Poly cst(const Vars& v, const FieldElem& c) { return Poly(v, c); }

AffineVariety line(const char* n) { return AffineVariety::affine_space(Vars{n}); }

SigmaVariety translation(const char* n, const FieldElem& step, DifferenceField k = trivial()) {
  Vars v{n};
  return SigmaVariety(k, line(n), {RatFunc(var(v, n) + cst(v, step))});
}

} // namespace

TEST_CASE("normal forms from the ideal examples") {
  Vars v{"x", "y"};
  auto x = var(v, "x"), y = var(v, "y");
  IdealRep i(v, {x * x - cst(v, q(2))});
  CHECK(i.normal_form(x.pow(3)) == x.scaled(q(2)));
  CHECK(IdealRep(v, {x - cst(v, q(1))}).normal_form(x * x - cst(v, q(1))).is_zero());
  CHECK(IdealRep(v, {x}).normal_form(y) == y);
  CHECK(groebner({x * x, x * y}, MonomialOrder::grevlex()) == std::vector<Poly>{x * x, x * y});
  CHECK(same_ideal(eliminate(IdealRep(v, {y - x * x, x - cst(v, q(1))}), {"x"}),
                   IdealRep(Vars{"y"}, {var(Vars{"y"}, "y") - cst(Vars{"y"}, q(1))})));
  CHECK(eliminate(IdealRep(v, {x * y - cst(v, q(1))}), {"x"}).is_zero());
  CHECK(same_ideal(saturate(IdealRep(v, {y}), x), IdealRep(v, {y})));
}

TEST_CASE("property: normal form is idempotent and linear, elimination composes") {
  Vars v{"x", "y", "z"};
  auto x = var(v, "x"), y = var(v, "y"), z = var(v, "z");
  IdealRep i(v, {x * y - z, y * y - x + cst(v, t())});
  Poly a = x.pow(3) * y + z, b = y.pow(4) - x * z;
  Poly na = i.normal_form(a);
  CHECK(i.normal_form(na) == na);
  CHECK(i.normal_form(a.scaled(t()) + b) == na.scaled(t()) + i.normal_form(b));
  IdealRep j(v, {x - y * y, z - y * y * y});
  auto both = eliminate(j, {"x", "y"});
  auto step = eliminate(eliminate(j, {"x"}), {"y"});
  CHECK(same_ideal(both, step));
}

TEST_CASE("k-points of zero-dimensional systems") {
  Vars v{"x", "y"};
  auto x = var(v, "x"), y = var(v, "y");
  IdealRep i(v, {x * x - cst(v, q(1, 4)), y - x.scaled(q(2))});
  auto pts = rational_points(i);
  CHECK(pts.complete);
  REQUIRE(pts.points.size() == 2);
  for (const auto& p : pts.points) CHECK(AffineVariety(i).contains_point(p));
  auto irr = rational_points(IdealRep(v, {x * x - cst(v, q(2)), y}));
  CHECK(irr.points.empty());
  CHECK(irr.complete);
  auto sym = solve_unique(IdealRep(v, {x.scaled(t()) - cst(v, q(1)), y - x}));
  REQUIRE(sym.has_value());
  CHECK((*sym)[0] == t().inverse());
  CHECK_FALSE(solve_unique(IdealRep(v, {x * x - cst(v, q(1)), y})).has_value());
  CHECK_FALSE(rational_points(IdealRep(v, {x - y})).complete);
}

TEST_CASE("sigma transform of varieties") {
  Vars v{"x"};
  AffineVariety x_t(IdealRep(v, {var(v, "x") - cst(v, t())}));
  auto moved = sigma_transform(x_t, shift(), 1);
  CHECK(same_ideal(moved.ideal(), IdealRep(v, {var(v, "x") - cst(v, t() + q(1))})));
  CHECK(same_ideal(sigma_transform(moved, shift(), -1).ideal(), x_t.ideal()));
}

TEST_CASE("composition") {
  Vars v{"x"};
  auto x = var(v, "x");
  auto a = line("x");
  RationalMap plus1(a, a, {RatFunc(x + cst(v, q(1)))});
  CHECK(compose(plus1, plus1).components()[0] == RatFunc(x + cst(v, q(2))));
  CHECK(maps_equal(compose(plus1, RationalMap::identity(a)), plus1));
  FieldElem g = FieldElem::symbol("g"), h = FieldElem::symbol("h");
  auto mob = [&](const FieldElem& c) {
    return RationalMap(a, a, {RatFunc::make(x, x.scaled(c) + cst(v, q(1)))});
  };
  // x/(hx+1) fed into x/(gx+1): numerator x/(hx+1), denominator (g x + h x + 1)/(hx+1).
  CHECK(compose(mob(g), mob(h)).components()[0] == mob(g + h).components()[0]);
}

TEST_CASE("graphs and dominance") {
  Vars v{"x"};
  auto x = var(v, "x");
  auto a = line("x");
  auto gr = graph(RationalMap(a, a, {RatFunc::make(cst(v, q(1)), x)}));
  Vars gv{"x", "x'"};
  CHECK(gr.vars() == gv);
  CHECK(same_ideal(gr.ideal(), IdealRep(gv, {var(gv, "x") * var(gv, "x'") - cst(gv, q(1))})));
  CHECK(is_dominant(RationalMap(a, a, {RatFunc(x * x)})));
  Vars v2{"x", "y"};
  auto plane = AffineVariety::affine_space(v2);
  CHECK_FALSE(is_dominant(RationalMap(plane, plane, {RatFunc(var(v2, "x")), RatFunc(var(v2, "x"))})));
  CHECK(same_ideal(image_closure({RatFunc(var(v2, "x")), RatFunc(var(v2, "x"))}, plane.ideal(), Vars{"y1", "y2"}),
                   IdealRep(Vars{"y1", "y2"}, {var(Vars{"y1", "y2"}, "y1") - var(Vars{"y1", "y2"}, "y2")})));
}

TEST_CASE("birational inverses") {
  Vars v{"x"};
  auto x = var(v, "x");
  auto a = line("x");
  CHECK(check_birational_inverse(RationalMap(a, a, {RatFunc(x + cst(v, q(1)))}),
                                 RationalMap(a, a, {RatFunc(x - cst(v, q(1)))})));
  CHECK_FALSE(check_birational_inverse(RationalMap(a, a, {RatFunc(x * x)}), RationalMap::identity(a)));
  Vars xz{"x", "z"}, yz{"y", "z"};
  auto p1 = AffineVariety::affine_space(xz), p2 = AffineVariety::affine_space(yz);
  RationalMap g(p1, p2, {RatFunc(var(xz, "x") - var(xz, "z")), RatFunc(var(xz, "z"))});
  RationalMap f(p2, p1, {RatFunc(var(yz, "y") + var(yz, "z")), RatFunc(var(yz, "z"))});
  CHECK(check_birational_inverse(g, f));
}

TEST_CASE("equivariance") {
  auto s = translation("x", q(1));
  Vars v{"x"};
  CHECK(is_equivariant(RationalMap::identity(s.carrier()), s, s));
  CHECK_FALSE(is_equivariant(RationalMap(s.carrier(), s.carrier(), {RatFunc(var(v, "x") * var(v, "x"))}), s, s));
  Vars xz{"x", "z"}, yz{"y", "z"};
  SigmaVariety src(trivial(), AffineVariety::affine_space(xz),
                   {RatFunc(var(xz, "x") + cst(xz, q(1))), RatFunc(var(xz, "z") + cst(xz, q(1)))});
  SigmaVariety dst(trivial(), AffineVariety::affine_space(yz),
                   {RatFunc(var(yz, "y")), RatFunc(var(yz, "z") + cst(yz, q(1)))});
  RationalMap g(src.carrier(), dst.carrier(), {RatFunc(var(xz, "x") - var(xz, "z")), RatFunc(var(xz, "z"))});
  CHECK(is_equivariant(g, src, dst));
  // Graph invariance for an equivariant map.
  CHECK(is_invariant_subvariety(graph(g), product(src, dst)));
}

TEST_CASE("invariant subvarieties") {
  Vars v{"x"};
  auto origin = AffineVariety(IdealRep(v, {var(v, "x")}));
  SigmaVariety scale(trivial(), line("x"), {RatFunc(var(v, "x").scaled(q(2)))});
  CHECK(is_invariant_subvariety(origin, scale));
  CHECK(is_invariant_subvariety(scale.carrier(), scale));
  CHECK_FALSE(is_invariant_subvariety(origin, translation("x", q(1))));
  SigmaVariety inv(trivial(), line("x"), {RatFunc::make(cst(v, q(1)), var(v, "x"))});
  CHECK_THROWS_AS(is_invariant_subvariety(origin, inv), Error);
}

TEST_CASE("powers and prolongations") {
  auto s = translation("x", q(1));
  auto p2 = cartesian_power(s, 2);
  CHECK(p2.vars() == Vars{"x_1", "x_2"});
  CHECK(p2.carrier().ideal().is_zero());
  CHECK(p2.phi().components()[1] == RatFunc(var(p2.vars(), "x_2") + cst(p2.vars(), q(1))));
  CHECK(cartesian_power(s, 1).vars() == s.vars());

  auto pr = prolongation(s, 1);
  Vars v1{"x_0", "x_1"};
  CHECK(same_ideal(pr.ideal(), IdealRep(v1, {var(v1, "x_1") - var(v1, "x_0") - cst(v1, q(1))})));
  CHECK(prolongation(s, 0).vars() == s.vars());

  auto e4 = translation("x", t(), shift());
  auto pr2 = prolongation(e4, 2);
  Vars v2{"x_0", "x_1", "x_2"};
  CHECK(same_ideal(pr2.ideal(), IdealRep(v2, {var(v2, "x_1") - var(v2, "x_0") - cst(v2, t()),
                                              var(v2, "x_2") - var(v2, "x_1") - cst(v2, t() + q(1))})));
  // Dense projection onto the shorter prolongation.
  CHECK(same_ideal(eliminate(pr2.ideal(), {"x_2"}), prolongation(e4, 1).ideal()));
  // Transform of the graph is the graph of the transform.
  auto g1 = graph(sigma_transform(e4.phi(), shift(), 1));
  auto g2 = sigma_transform(graph(e4.phi()), shift(), 1);
  CHECK(same_ideal(g1.ideal(), g2.ideal()));
}

TEST_CASE("canonical bases") {
  auto rational_only = [](const CanonicalBase& b) { return b.generators.empty(); };
  CHECK(rational_only(canonical_base(translation("x", q(1)))));
  Vars v{"x"};
  CHECK(rational_only(canonical_base(SigmaVariety(trivial(), line("x"), {RatFunc(var(v, "x").scaled(q(2)))}))));
  auto b = canonical_base(translation("x", t(), shift()));
  REQUIRE(b.generators.size() == 1);
  CHECK(b.generators[0] == t());
  CHECK(b.stabilized);
}

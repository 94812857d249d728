#pragma once

#include "sdyn/binding.hpp"

#include <functional>

namespace fixtures {

using namespace sdyn;

inline FieldElem q(long n, long d = 1) { return FieldElem(Rational(n, d)); }
inline FieldElem t() { return FieldElem::symbol("t"); }
inline DifferenceField shift() { return DifferenceField({"t"}, {t() + q(1)}, {t() - q(1)}); }

using Comps = std::function<std::vector<RatFunc>(const Poly&, const Poly&)>;

// V = A^1 in x, Z = A^1 in z, Y = A^2 in (y, z).
inline Trivialization line_family(const DifferenceField& k, const std::function<RatFunc(const Poly&)>& phi,
                                  const std::function<RatFunc(const Poly&)>& psi, const Comps& g, const Comps& f) {
  Vars vx{"x"}, vz{"z"}, xz{"x", "z"}, yz{"y", "z"};
  auto V = AffineVariety::affine_space(vx), Z = AffineVariety::affine_space(vz);
  auto XZ = AffineVariety::affine_space(xz), Y = AffineVariety::affine_space(yz);
  SigmaVariety s(k, V, {phi(Poly::variable(vx, 0))});
  SigmaVariety z(k, Z, {psi(Poly::variable(vz, 0))});
  RationalMap gm(XZ, Y, g(Poly::variable(xz, 0), Poly::variable(xz, 1)));
  RationalMap fm(Y, XZ, f(Poly::variable(yz, 0), Poly::variable(yz, 1)));
  return {s, z, Y, gm, fm};
}

inline Poly one(const Poly& p) { return Poly(p.vars(), q(1)); }

// phi = x+1, psi = z+1, g = (x-z, z).
inline Trivialization e1() {
  return line_family(
      {}, [](const Poly& x) { return RatFunc(x + one(x)); }, [](const Poly& z) { return RatFunc(z + one(z)); },
      [](const Poly& x, const Poly& z) { return std::vector<RatFunc>{RatFunc(x - z), RatFunc(z)}; },
      [](const Poly& y, const Poly& z) { return std::vector<RatFunc>{RatFunc(y + z), RatFunc(z)}; });
}

// phi = 2x, psi = 2z, g = (x/z, z).
inline Trivialization e2() {
  return line_family(
      {}, [](const Poly& x) { return RatFunc(x.scaled(q(2))); }, [](const Poly& z) { return RatFunc(z.scaled(q(2))); },
      [](const Poly& x, const Poly& z) { return std::vector<RatFunc>{RatFunc::make(x, z), RatFunc(z)}; },
      [](const Poly& y, const Poly& z) { return std::vector<RatFunc>{RatFunc(y * z), RatFunc(z)}; });
}

// phi = x/(x+1), psi = z+1, g = (1/x - z, z).
inline Trivialization mobius() {
  return line_family(
      {}, [](const Poly& x) { return RatFunc::make(x, x + one(x)); },
      [](const Poly& z) { return RatFunc(z + one(z)); },
      [](const Poly& x, const Poly& z) {
        return std::vector<RatFunc>{RatFunc::make(one(x), x) - RatFunc(z), RatFunc(z)};
      },
      [](const Poly& y, const Poly& z) { return std::vector<RatFunc>{RatFunc::make(one(y), y + z), RatFunc(z)}; });
}

// Over Q(t) with sigma(t) = t+1: phi = x+t, psi = z+t, g = (x-z, z).
inline Trivialization e4() {
  return line_family(
      shift(), [](const Poly& x) { return RatFunc(x + Poly(x.vars(), t())); },
      [](const Poly& z) { return RatFunc(z + Poly(z.vars(), t())); },
      [](const Poly& x, const Poly& z) { return std::vector<RatFunc>{RatFunc(x - z), RatFunc(z)}; },
      [](const Poly& y, const Poly& z) { return std::vector<RatFunc>{RatFunc(y + z), RatFunc(z)}; });
}

// E1's dynamics with the non-equivariant g = (x z, z).
inline Trivialization broken() {
  return line_family(
      {}, [](const Poly& x) { return RatFunc(x + one(x)); }, [](const Poly& z) { return RatFunc(z + one(z)); },
      [](const Poly& x, const Poly& z) { return std::vector<RatFunc>{RatFunc(x * z), RatFunc(z)}; },
      [](const Poly& y, const Poly& z) { return std::vector<RatFunc>{RatFunc::make(y, z), RatFunc(z)}; });
}

} // namespace fixtures

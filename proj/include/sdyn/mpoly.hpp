#pragma once

// Sparse multivariate polynomials over Q in named symbols.
//
// This is the arithmetic substrate below the difference field: elements of
// k = Q(t_1..t_r) (and of its extensions by generic parameters) are quotients
// of MPoly values, and all gcd computations, including the ones used to
// reduce rational functions in geometric variables, happen here.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdyn {

using Integer = mpz_class;
using Rational = mpq_class;

std::string rational_to_string(const Rational& q);

class SymMonomial {
public:
  using Factor = std::pair<std::string, unsigned>;

  SymMonomial() = default;
  explicit SymMonomial(std::vector<Factor> factors);

  static SymMonomial var(const std::string& name, unsigned exp = 1);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  unsigned degree() const;
  unsigned degree(std::string_view name) const;

  bool divides(const SymMonomial& other) const;
  SymMonomial operator*(const SymMonomial& other) const;
  // Precondition: divides(other) from the right, i.e. this is a multiple.
  SymMonomial quotient(const SymMonomial& divisor) const;
  SymMonomial without(std::string_view name) const;

  std::string to_string() const;

  friend bool operator==(const SymMonomial&, const SymMonomial&) = default;

private:
  std::vector<Factor> f_;
};

// Graded lexicographic order, symbols compared by name.
struct SymMonomialLess {
  bool operator()(const SymMonomial& a, const SymMonomial& b) const;
};

class MPoly {
public:
  using Terms = std::map<SymMonomial, Rational, SymMonomialLess>;

  MPoly() = default;
  MPoly(const Rational& c);
  MPoly(long c) : MPoly(Rational(c)) {}

  static MPoly symbol(const std::string& name);
  static MPoly term(const SymMonomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const SymMonomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  std::set<std::string> symbols() const;
  bool has_symbol(std::string_view name) const;
  unsigned degree(std::string_view name) const;
  unsigned total_degree() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;

  MPoly scaled(const Rational& c) const;
  MPoly pow(unsigned e) const;

  // Univariate view in `var`: exponent -> coefficient free of `var`.
  std::map<unsigned, MPoly> coefficients_in(std::string_view var) const;

  std::string to_string() const;

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
  void add_term(const SymMonomial& m, const Rational& c);

  Terms terms_;
};

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b);

// Scales so the leading coefficient (graded lex) is 1. Zero stays zero.
MPoly make_monic(const MPoly& p);

// Greatest common divisor over Q, normalized monic. gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

// Least common multiple, monic.
MPoly lcm(const MPoly& a, const MPoly& b);

} // namespace sdyn

#pragma once

#include "sdyn/field.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sdyn {

// Ordered list of geometric variable names, shared between polynomials.
class Vars {
public:
  Vars() : names_(std::make_shared<const std::vector<std::string>>()) {}
  Vars(std::vector<std::string> names);
  Vars(std::initializer_list<std::string> names) : Vars(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }

  Vars concat(const Vars& other) const;

  friend bool operator==(const Vars& a, const Vars& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponent = std::vector<std::uint16_t>;

unsigned total_degree(const Exponent& e);

struct MonomialOrder {
  enum class Kind { Grevlex, Lex, Block };
  Kind kind = Kind::Grevlex;
  // For Block: the first `block` variables are compared first (grevlex),
  // then the remaining ones (grevlex).
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t n) { return {Kind::Block, n}; }

  std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
  std::string to_string() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class RatFunc;

// Polynomial in the geometric variables with coefficients in the field of
// the coefficient symbols (k, possibly extended by generic parameters).
class Poly {
public:
  using Terms = std::map<Exponent, FieldElem>;

  Poly() = default;
  explicit Poly(Vars vars) : vars_(std::move(vars)) {}
  Poly(Vars vars, const FieldElem& c);
  static Poly variable(const Vars& vars, std::size_t i);
  static Poly variable(const Vars& vars, const std::string& name);
  static Poly monomial(const Vars& vars, const Exponent& e, const FieldElem& c = FieldElem(1));

  const Vars& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElem constant_term() const;
  FieldElem coefficient(const Exponent& e) const;
  unsigned total_degree() const;
  unsigned degree(std::size_t var) const;

  // Leading exponent and coefficient under `order`; precondition nonzero.
  std::pair<Exponent, FieldElem> leading_term(const MonomialOrder& order) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const FieldElem& c) const;
  Poly pow(unsigned e) const;

  // Applies sigma^power to every coefficient.
  Poly coeff_transform(const DifferenceField& field, int power) const;
  // Substitutes field elements for coefficient symbols.
  Poly substitute_symbols(const std::map<std::string, FieldElem>& values) const;

  // Evaluates at a point given by one field element per variable.
  FieldElem evaluate(const std::vector<FieldElem>& point) const;

  // Rewrites over `target` by variable name; every variable with a nonzero
  // exponent must exist in `target`.
  Poly embed(const Vars& target) const;

  // Symbols of the coefficients (not variables).
  std::set<std::string> coefficient_symbols() const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

private:
  friend class RatFunc;
  void add_term(const Exponent& e, const FieldElem& c);
  void check_same(const Poly& o) const;

  Vars vars_;
  Terms terms_;
};

// Clears coefficient denominators: p = result.first / result.second with
// result.first an MPoly over Q in variables and coefficient symbols together.
std::pair<MPoly, MPoly> to_mpoly(const Poly& p);
// Inverse of to_mpoly: symbols named in `vars` become variables.
Poly from_mpoly(const MPoly& p, const Vars& vars);

// Reduced quotient of polynomials: gcd(num, den) = 1 and the grevlex
// leading coefficient of den is 1.
class RatFunc {
public:
  RatFunc() = default;
  explicit RatFunc(Vars vars) : num_(vars), den_(vars, FieldElem(1)) {}
  RatFunc(const Poly& p);
  RatFunc(Vars vars, const FieldElem& c) : num_(vars, c), den_(vars, FieldElem(1)) {}
  // Throws ZeroDenominator when den == 0.
  static RatFunc make(const Poly& num, const Poly& den);
  static RatFunc variable(const Vars& vars, const std::string& name) {
    return RatFunc(Poly::variable(vars, name));
  }

  const Vars& vars() const { return num_.vars(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  unsigned total_degree() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  RatFunc pow(int e) const;

  RatFunc coeff_transform(const DifferenceField& field, int power) const;
  RatFunc substitute_symbols(const std::map<std::string, FieldElem>& values) const;
  // Evaluates at a point; throws ZeroDenominator where undefined.
  FieldElem evaluate(const std::vector<FieldElem>& point) const;

  // Moves symbols between variables and coefficients: the result lives over
  // `target`; variables of this function not in `target` become coefficient
  // symbols and coefficient symbols named in `target` become variables.
  RatFunc rebase(const Vars& target) const;

  std::string to_string() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

private:
  RatFunc(Poly num, Poly den, bool /*trusted*/) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

// p(images) where images[i] replaces variable i of p; all images share Vars.
RatFunc substitute(const Poly& p, const std::vector<RatFunc>& images);
RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& images);

// B * p(images) with B = prod den(images_i)^clear_degree; requires
// clear_degree >= deg p. Returns a polynomial.
Poly substitute_cleared(const Poly& p, const std::vector<RatFunc>& images, unsigned clear_degree);

// Enumerates all exponents of total degree <= d in n variables, in
// descending grevlex order.
std::vector<Exponent> monomials_up_to(std::size_t n, unsigned d);

} // namespace sdyn

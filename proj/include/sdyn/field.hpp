#pragma once

#include "sdyn/mpoly.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace sdyn {

// An element of Q(s_1, ..., s_m) for whatever symbols occur: the field
// generators t_i of k, and any generic parameters adjoined to k.
// Stored as num/den with gcd(num, den) = 1 and den monic, so equal
// elements have identical representations.
class FieldElem {
public:
  FieldElem() : den_(1) {}
  FieldElem(const Rational& q) : num_(q), den_(1) {}
  FieldElem(long v) : FieldElem(Rational(v)) {}
  explicit FieldElem(const MPoly& p) : num_(p), den_(1) {}

  static FieldElem symbol(const std::string& name) { return FieldElem(MPoly::symbol(name)); }
  // Throws ZeroDenominator when den == 0.
  static FieldElem fraction(const MPoly& num, const MPoly& den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_term() == 1; }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational rational_value() const;

  std::set<std::string> symbols() const;
  bool depends_on(const std::set<std::string>& syms) const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(int e) const;

  // Replaces symbols by field elements; symbols not in the map are kept.
  FieldElem substitute(const std::map<std::string, FieldElem>& values) const;

  std::string to_string() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

private:
  FieldElem(MPoly num, MPoly den, bool /*trusted*/) : num_(std::move(num)), den_(std::move(den)) {}

  MPoly num_;
  MPoly den_;
};

// Evaluates p at the given symbol values with a single common denominator.
FieldElem substitute(const MPoly& p, const std::map<std::string, FieldElem>& values);

// The base difference field k = Q(t_1..t_r) with an automorphism sigma given
// by substitutions on the generators. The inverse must be supplied; it is
// checked at construction.
class DifferenceField {
public:
  DifferenceField() = default;
  DifferenceField(std::vector<std::string> generators, std::vector<FieldElem> sigma,
                  std::vector<FieldElem> sigma_inverse);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<FieldElem>& sigma_images() const { return sigma_; }
  const std::vector<FieldElem>& sigma_inverse_images() const { return sigma_inv_; }
  bool is_autonomous() const { return autonomous_; }
  bool is_generator(const std::string& name) const;

  FieldElem sigma_apply(const FieldElem& e, int power) const;
  bool is_fixed(const FieldElem& e) const;

private:
  std::vector<std::string> generators_;
  std::vector<FieldElem> sigma_;
  std::vector<FieldElem> sigma_inv_;
  std::map<std::string, FieldElem> forward_;
  std::map<std::string, FieldElem> backward_;
  bool autonomous_ = true;
};

} // namespace sdyn

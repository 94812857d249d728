#include "sdyn/field.hpp"

#include "sdyn/errors.hpp"

#include <algorithm>

namespace sdyn {

FieldElem FieldElem::fraction(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) fail(ErrorKind::ZeroDenominator, "zero denominator in field element");
  if (num.is_zero()) return FieldElem();
  if (den.is_constant()) return FieldElem(num.scaled(1 / den.constant_term()), MPoly(1), true);
  MPoly g = gcd(num, den);
  MPoly n = num, d = den;
  if (!g.is_constant()) {
    n = *exact_divide(num, g);
    d = *exact_divide(den, g);
  }
  Rational lc = d.leading_coeff();
  if (lc != 1) {
    n = n.scaled(1 / lc);
    d = d.scaled(1 / lc);
  }
  return FieldElem(std::move(n), std::move(d), true);
}

Rational FieldElem::rational_value() const {
  if (!is_rational()) fail(ErrorKind::InvalidArgument, "field element is not rational: " + to_string());
  return num_.constant_term() / den_.constant_term();
}

std::set<std::string> FieldElem::symbols() const {
  auto s = num_.symbols();
  auto d = den_.symbols();
  s.insert(d.begin(), d.end());
  return s;
}

bool FieldElem::depends_on(const std::set<std::string>& syms) const {
  for (const auto& s : symbols())
    if (syms.count(s)) return true;
  return false;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) return *this = fraction(num_ + o.num_, den_);
  return *this = fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (is_zero() || o.is_zero()) return *this = FieldElem();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  return *this = fraction(num_ * o.num_, den_ * o.den_);
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

FieldElem FieldElem::operator-() const { return FieldElem(-num_, den_, true); }

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(ErrorKind::ZeroDenominator, "inverse of zero");
  return fraction(den_, num_);
}

FieldElem FieldElem::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return FieldElem(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

FieldElem FieldElem::substitute(const std::map<std::string, FieldElem>& values) const {
  if (values.empty() || is_rational()) return *this;
  FieldElem n = sdyn::substitute(num_, values);
  if (den_.is_constant()) return n;
  return n / sdyn::substitute(den_, values);
}

std::string FieldElem::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  auto wrap = [](const MPoly& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

FieldElem substitute(const MPoly& p, const std::map<std::string, FieldElem>& values) {
  // Common denominator prod d_s^{D_s}, D_s the degree of p in s. Values
  // with a constant denominator have denominator exactly 1 (monic).
  std::map<std::string, unsigned> maxdeg;
  for (const auto& [s, v] : values) {
    unsigned d = p.degree(s);
    if (d > 0 && !v.den().is_constant()) maxdeg[s] = d;
  }
  std::map<std::string, std::vector<MPoly>> num_pows, den_pows;
  auto cached_pow = [](std::vector<MPoly>& v, const MPoly& base, unsigned e) -> const MPoly& {
    if (v.empty()) v.push_back(MPoly(1));
    while (v.size() <= e) v.push_back(v.back() * base);
    return v[e];
  };

  MPoly num;
  for (const auto& [m, c] : p.terms()) {
    MPoly t(c);
    std::vector<SymMonomial::Factor> kept;
    std::map<std::string, unsigned> used;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end()) {
        kept.emplace_back(s, e);
        continue;
      }
      t *= cached_pow(num_pows[s], it->second.num(), e);
      used[s] = e;
    }
    for (const auto& [s, D] : maxdeg) t *= cached_pow(den_pows[s], values.at(s).den(), D - used[s]);
    t *= MPoly::term(SymMonomial(std::move(kept)), 1);
    num += t;
  }
  MPoly den(1);
  for (const auto& [s, D] : maxdeg) den *= cached_pow(den_pows[s], values.at(s).den(), D);
  return FieldElem::fraction(num, den);
}

DifferenceField::DifferenceField(std::vector<std::string> generators, std::vector<FieldElem> sigma,
                                 std::vector<FieldElem> sigma_inverse)
    : generators_(std::move(generators)), sigma_(std::move(sigma)), sigma_inv_(std::move(sigma_inverse)) {
  if (sigma_.size() != generators_.size() || sigma_inv_.size() != generators_.size())
    fail(ErrorKind::InvalidField, "sigma and its inverse need one image per generator");
  std::set<std::string> gens(generators_.begin(), generators_.end());
  if (gens.size() != generators_.size()) fail(ErrorKind::InvalidField, "duplicate field generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (const auto* img : {&sigma_[i], &sigma_inv_[i]})
      for (const auto& s : img->symbols())
        if (!gens.count(s))
          fail(ErrorKind::InvalidField, "sigma image of " + generators_[i] + " uses unknown symbol " + s);
    forward_[generators_[i]] = sigma_[i];
    backward_[generators_[i]] = sigma_inv_[i];
    if (!(sigma_[i] == FieldElem::symbol(generators_[i]))) autonomous_ = false;
  }
  for (const auto& g : generators_) {
    FieldElem t = FieldElem::symbol(g);
    if (!(t.substitute(backward_).substitute(forward_) == t) ||
        !(t.substitute(forward_).substitute(backward_) == t))
      fail(ErrorKind::InvalidField, "supplied inverse does not invert sigma on " + g);
  }
}

bool DifferenceField::is_generator(const std::string& name) const {
  return std::find(generators_.begin(), generators_.end(), name) != generators_.end();
}

FieldElem DifferenceField::sigma_apply(const FieldElem& e, int power) const {
  if (autonomous_ || power == 0 || e.is_rational()) return e;
  const auto& step = power > 0 ? forward_ : backward_;
  FieldElem r = e;
  for (int i = 0; i < std::abs(power); ++i) r = r.substitute(step);
  return r;
}

bool DifferenceField::is_fixed(const FieldElem& e) const { return sigma_apply(e, 1) == e; }

} // namespace sdyn

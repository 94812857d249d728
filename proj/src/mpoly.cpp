#include "sdyn/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdyn {

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

SymMonomial::SymMonomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (auto& f : factors) {
    if (f.second == 0) continue;
    if (!f_.empty() && f_.back().first == f.first)
      f_.back().second += f.second;
    else
      f_.push_back(std::move(f));
  }
}

SymMonomial SymMonomial::var(const std::string& name, unsigned exp) {
  SymMonomial m;
  if (exp > 0) m.f_.emplace_back(name, exp);
  return m;
}

unsigned SymMonomial::degree() const {
  unsigned d = 0;
  for (const auto& f : f_) d += f.second;
  return d;
}

unsigned SymMonomial::degree(std::string_view name) const {
  for (const auto& f : f_)
    if (f.first == name) return f.second;
  return 0;
}

bool SymMonomial::divides(const SymMonomial& other) const {
  auto it = other.f_.begin();
  for (const auto& f : f_) {
    while (it != other.f_.end() && it->first < f.first) ++it;
    if (it == other.f_.end() || it->first != f.first || it->second < f.second) return false;
  }
  return true;
}

SymMonomial SymMonomial::operator*(const SymMonomial& o) const {
  SymMonomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
      r.f_.push_back(*a++);
    } else if (a == f_.end() || b->first < a->first) {
      r.f_.push_back(*b++);
    } else {
      r.f_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

SymMonomial SymMonomial::quotient(const SymMonomial& d) const {
  SymMonomial r;
  auto it = d.f_.begin();
  for (const auto& f : f_) {
    unsigned e = f.second;
    if (it != d.f_.end() && it->first == f.first) {
      e -= it->second;
      ++it;
    }
    if (e > 0) r.f_.emplace_back(f.first, e);
  }
  return r;
}

SymMonomial SymMonomial::without(std::string_view name) const {
  SymMonomial r;
  for (const auto& f : f_)
    if (f.first != name) r.f_.push_back(f);
  return r;
}

std::string SymMonomial::to_string() const {
  std::string s;
  for (const auto& f : f_) {
    if (!s.empty()) s += "*";
    s += f.first;
    if (f.second > 1) s += "^" + std::to_string(f.second);
  }
  return s.empty() ? "1" : s;
}

bool SymMonomialLess::operator()(const SymMonomial& a, const SymMonomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first > fb[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
  }
  return fa.size() < fb.size();
}

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_.emplace(SymMonomial(), c);
}

MPoly MPoly::symbol(const std::string& name) { return term(SymMonomial::var(name), 1); }

MPoly MPoly::term(const SymMonomial& m, const Rational& c) {
  MPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MPoly::constant_term() const {
  auto it = terms_.find(SymMonomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

const SymMonomial& MPoly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MPoly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

std::set<std::string> MPoly::symbols() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) s.insert(f.first);
  return s;
}

bool MPoly::has_symbol(std::string_view name) const {
  for (const auto& [m, c] : terms_)
    if (m.degree(name) > 0) return true;
  return false;
}

unsigned MPoly::degree(std::string_view name) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(name));
  return d;
}

unsigned MPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

void MPoly::add_term(const SymMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_constant()) return b.scaled(a.terms_.begin()->second);
  if (b.is_constant()) return a.scaled(b.terms_.begin()->second);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly MPoly::operator-() const { return scaled(-1); }

MPoly MPoly::scaled(const Rational& c) const {
  MPoly r;
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

std::map<unsigned, MPoly> MPoly::coefficients_in(std::string_view var) const {
  std::map<unsigned, MPoly> out;
  for (const auto& [m, c] : terms_) out[m.degree(var)].add_term(m.without(var), c);
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += rational_to_string(a);
    } else {
      if (a != 1) s += rational_to_string(a) + "*";
      s += m.to_string();
    }
  }
  return s;
}

std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.terms().begin()->second);
  MPoly q, r = a;
  const SymMonomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coeff();
  while (!r.is_zero()) {
    const SymMonomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    MPoly t = MPoly::term(lr.quotient(lb), r.leading_coeff() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

MPoly make_monic(const MPoly& p) {
  if (p.is_zero()) return p;
  const Rational& c = p.leading_coeff();
  return c == 1 ? p : p.scaled(1 / c);
}

namespace {

MPoly content_of(const std::map<unsigned, MPoly>& coeffs) {
  MPoly g;
  for (const auto& [e, c] : coeffs) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return MPoly(1);
  }
  return g;
}

MPoly divide_or_throw(const MPoly& a, const MPoly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("inexact division in gcd");
  return *q;
}

MPoly primitive_part(const MPoly& p, const std::string& var) {
  if (p.is_zero()) return p;
  MPoly c = content_of(p.coefficients_in(var));
  return make_monic(c.is_constant() ? p : divide_or_throw(p, c));
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, const std::string& var) {
  unsigned db = b.degree(var);
  auto cb = b.coefficients_in(var);
  const MPoly lcb = cb[db];
  MPoly r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree(var);
    if (dr < db) break;
    MPoly lcr = r.coefficients_in(var)[dr];
    r = lcb * r - lcr * MPoly::term(SymMonomial::var(var, dr - db), 1) * b;
  }
  return r;
}

} // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a == b) return make_monic(a);

  std::set<std::string> syms = a.symbols();
  auto sb = b.symbols();
  syms.insert(sb.begin(), sb.end());
  const std::string var = *syms.begin();

  bool a_has = a.has_symbol(var), b_has = b.has_symbol(var);
  if (!a_has) return gcd(a, content_of(b.coefficients_in(var)));
  if (!b_has) return gcd(content_of(a.coefficients_in(var)), b);

  MPoly ca = content_of(a.coefficients_in(var));
  MPoly cb = content_of(b.coefficients_in(var));
  MPoly c = gcd(ca, cb);
  MPoly pa = make_monic(ca.is_constant() ? a : divide_or_throw(a, ca));
  MPoly pb = make_monic(cb.is_constant() ? b : divide_or_throw(b, cb));
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);

  while (!pb.is_zero()) {
    MPoly r = pseudo_remainder(pa, pb, var);
    pa = std::move(pb);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      pa = MPoly(1);
      break;
    }
    pb = primitive_part(r, var);
  }
  return make_monic(c * primitive_part(pa, var));
}

MPoly lcm(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  MPoly g = gcd(a, b);
  return make_monic(divide_or_throw(a, g) * b);
}

} // namespace sdyn

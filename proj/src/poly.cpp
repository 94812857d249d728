#include "sdyn/poly.hpp"

#include "sdyn/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sdyn {

Vars::Vars(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) fail(ErrorKind::InvalidArgument, "duplicate variable name " + n);
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> Vars::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

Vars Vars::concat(const Vars& other) const {
  std::vector<std::string> all = names();
  all.insert(all.end(), other.names().begin(), other.names().end());
  return Vars(std::move(all));
}

unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

namespace {

std::strong_ordering grevlex_range(const Exponent& a, const Exponent& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return b[i] <=> a[i];
  return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  switch (kind) {
  case Kind::Grevlex:
    return grevlex_range(a, b, 0, a.size());
  case Kind::Lex:
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
  case Kind::Block: {
    std::size_t k = std::min(block, a.size());
    auto c = grevlex_range(a, b, 0, k);
    if (c != 0) return c;
    return grevlex_range(a, b, k, a.size());
  }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::to_string() const {
  switch (kind) {
  case Kind::Grevlex:
    return "grevlex";
  case Kind::Lex:
    return "lex";
  case Kind::Block:
    return "block(" + std::to_string(block) + ")";
  }
  return "?";
}

Poly::Poly(Vars vars, const FieldElem& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_.emplace(Exponent(vars_.size(), 0), c);
}

Poly Poly::variable(const Vars& vars, std::size_t i) {
  Exponent e(vars.size(), 0);
  e.at(i) = 1;
  return monomial(vars, e);
}

Poly Poly::variable(const Vars& vars, const std::string& name) {
  auto i = vars.index_of(name);
  if (!i) fail(ErrorKind::NameError, "unknown variable " + name);
  return variable(vars, *i);
}

Poly Poly::monomial(const Vars& vars, const Exponent& e, const FieldElem& c) {
  Poly p(vars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && sdyn::total_degree(terms_.begin()->first) == 0);
}

FieldElem Poly::constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }

FieldElem Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem() : it->second;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, sdyn::total_degree(e));
  return d;
}

unsigned Poly::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
  return d;
}

std::pair<Exponent, FieldElem> Poly::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.compare(it->first, best->first) > 0) best = it;
  return *best;
}

void Poly::add_term(const Exponent& e, const FieldElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (!(vars_ == o.vars_)) throw std::invalid_argument("polynomials over different variable lists");
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly r(a.vars_);
  const std::size_t n = a.vars_.size();
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator-() const { return scaled(FieldElem(-1)); }

Poly Poly::scaled(const FieldElem& c) const {
  Poly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(vars_, FieldElem(1)), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::coeff_transform(const DifferenceField& field, int power) const {
  if (field.is_autonomous() || power == 0) return *this;
  Poly r(vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, field.sigma_apply(c, power));
  return r;
}

Poly Poly::substitute_symbols(const std::map<std::string, FieldElem>& values) const {
  Poly r(vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c.substitute(values));
  return r;
}

FieldElem Poly::evaluate(const std::vector<FieldElem>& point) const {
  if (point.size() != vars_.size()) fail(ErrorKind::ArityError, "point arity does not match variables");
  std::vector<std::vector<FieldElem>> pows(point.size());
  auto power = [&](std::size_t i, unsigned e) -> const FieldElem& {
    auto& v = pows[i];
    if (v.empty()) v.push_back(FieldElem(1));
    while (v.size() <= e) v.push_back(v.back() * point[i]);
    return v[e];
  };
  FieldElem sum;
  for (const auto& [e, c] : terms_) {
    FieldElem t = c;
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
      if (e[i] > 0) t *= power(i, e[i]);
    sum += t;
  }
  return sum;
}

Poly Poly::embed(const Vars& target) const {
  if (vars_ == target) return *this;
  std::vector<std::optional<std::size_t>> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = target.index_of(vars_[i]);
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Exponent ne(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) fail(ErrorKind::NameError, "variable " + vars_[i] + " missing from target ring");
      ne[*map[i]] = e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

std::set<std::string> Poly::coefficient_symbols() const {
  std::set<std::string> s;
  for (const auto& [e, c] : terms_) {
    auto cs = c.symbols();
    s.insert(cs.begin(), cs.end());
  }
  return s;
}

namespace {

std::string exponent_to_string(const Vars& vars, const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

} // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, FieldElem>> sorted(terms_.begin(), terms_.end());
  auto order = MonomialOrder::grevlex();
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto& a, const auto& b) { return order.compare(a.first, b.first) > 0; });
  std::string s;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    std::string mono = exponent_to_string(vars_, e);
    std::string coef;
    bool neg = false;
    if (c.is_rational()) {
      Rational q = c.rational_value();
      neg = q < 0;
      Rational a = abs(q);
      if (mono.empty() || a != 1) coef = rational_to_string(a);
    } else {
      coef = c.to_string();
      if (coef.find_first_of(" /") != std::string::npos) coef = "(" + coef + ")";
    }
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (!coef.empty() && !mono.empty())
      s += coef + "*" + mono;
    else
      s += coef + mono;
  }
  return s;
}

std::pair<MPoly, MPoly> to_mpoly(const Poly& p) {
  MPoly common(1);
  for (const auto& [e, c] : p.terms())
    if (!c.den().is_constant()) common = lcm(common, c.den());
  MPoly num;
  for (const auto& [e, c] : p.terms()) {
    std::vector<SymMonomial::Factor> f;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) f.emplace_back(p.vars()[i], e[i]);
    MPoly coef = c.num();
    if (!common.is_constant()) coef *= c.den().is_constant() ? common : *exact_divide(common, c.den());
    num += coef * MPoly::term(SymMonomial(std::move(f)), 1);
  }
  return {num, common};
}

Poly from_mpoly(const MPoly& p, const Vars& vars) {
  std::map<Exponent, MPoly> grouped;
  for (const auto& [m, c] : p.terms()) {
    Exponent e(vars.size(), 0);
    std::vector<SymMonomial::Factor> rest;
    for (const auto& [s, k] : m.factors()) {
      if (auto i = vars.index_of(s))
        e[*i] = static_cast<std::uint16_t>(k);
      else
        rest.emplace_back(s, k);
    }
    grouped[e] += MPoly::term(SymMonomial(std::move(rest)), c);
  }
  Poly r(vars);
  for (auto& [e, c] : grouped)
    if (!c.is_zero()) r += Poly::monomial(vars, e, FieldElem(c));
  return r;
}

RatFunc::RatFunc(const Poly& p) : num_(p), den_(p.vars(), FieldElem(1)) {}

RatFunc RatFunc::make(const Poly& num, const Poly& den) {
  if (!(num.vars() == den.vars())) throw std::invalid_argument("numerator and denominator over different variables");
  if (den.is_zero()) fail(ErrorKind::ZeroDenominator, "zero denominator in rational function");
  const Vars& vars = num.vars();
  if (num.is_zero()) return RatFunc(vars);
  if (den.is_constant()) return RatFunc(num.scaled(den.constant_term().inverse()), Poly(vars, FieldElem(1)), true);

  auto [n1, l1] = to_mpoly(num);
  auto [n2, l2] = to_mpoly(den);
  MPoly n = n1 * l2, d = n2 * l1;
  MPoly g = gcd(n, d);
  if (!g.is_constant()) {
    n = *exact_divide(n, g);
    d = *exact_divide(d, g);
  }
  Poly pn = from_mpoly(n, vars), pd = from_mpoly(d, vars);
  FieldElem lc = pd.leading_term(MonomialOrder::grevlex()).second;
  if (!lc.is_one()) {
    FieldElem inv = lc.inverse();
    pn = pn.scaled(inv);
    pd = pd.scaled(inv);
  }
  return RatFunc(std::move(pn), std::move(pd), true);
}

unsigned RatFunc::total_degree() const { return std::max(num_.total_degree(), den_.total_degree()); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) return *this = RatFunc(num_ + o.num_);
  if (den_ == o.den_) return *this = make(num_ + o.num_, den_);
  return *this = make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) return *this = RatFunc(num_ * o.num_);
  return *this = make(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this = make(num_ * o.den_, den_ * o.num_); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, true); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return make(den_, num_).pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

RatFunc RatFunc::coeff_transform(const DifferenceField& field, int power) const {
  if (field.is_autonomous() || power == 0) return *this;
  return make(num_.coeff_transform(field, power), den_.coeff_transform(field, power));
}

RatFunc RatFunc::substitute_symbols(const std::map<std::string, FieldElem>& values) const {
  return make(num_.substitute_symbols(values), den_.substitute_symbols(values));
}

FieldElem RatFunc::evaluate(const std::vector<FieldElem>& point) const {
  FieldElem d = den_.evaluate(point);
  if (d.is_zero()) fail(ErrorKind::ZeroDenominator, "rational function undefined at point");
  return num_.evaluate(point) / d;
}

RatFunc RatFunc::rebase(const Vars& target) const {
  auto [n1, l1] = to_mpoly(num_);
  auto [n2, l2] = to_mpoly(den_);
  return make(from_mpoly(n1 * l2, target), from_mpoly(n2 * l1, target));
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  auto wrap = [](const Poly& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

namespace {

// Numerator of p(images) over the common denominator prod den_i^{D_i}.
Poly substituted_numerator(const Poly& p, const std::vector<RatFunc>& images, const std::vector<unsigned>& D,
                           const Vars& target) {
  if (images.size() != p.vars().size()) fail(ErrorKind::ArityError, "substitution arity mismatch");
  std::vector<std::vector<Poly>> npow(images.size()), dpow(images.size());
  auto cached = [](std::vector<Poly>& v, const Poly& base, unsigned e) -> const Poly& {
    if (v.empty()) v.push_back(Poly(base.vars(), FieldElem(1)));
    while (v.size() <= e) v.push_back(v.back() * base);
    return v[e];
  };
  Poly num(target);
  for (const auto& [e, c] : p.terms()) {
    Poly t(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t = t * cached(npow[i], images[i].num(), e[i]);
      if (!images[i].is_polynomial() && D[i] > e[i]) t = t * cached(dpow[i], images[i].den(), D[i] - e[i]);
    }
    num += t;
  }
  return num;
}

Poly common_denominator(const std::vector<RatFunc>& images, const std::vector<unsigned>& D, const Vars& target) {
  Poly den(target, FieldElem(1));
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!images[i].is_polynomial() && D[i] > 0) den = den * images[i].den().pow(D[i]);
  return den;
}

Vars image_vars(const std::vector<RatFunc>& images) {
  if (images.empty()) return Vars();
  for (const auto& im : images)
    if (!(im.vars() == images.front().vars())) throw std::invalid_argument("substitution images over different variables");
  return images.front().vars();
}

} // namespace

RatFunc substitute(const Poly& p, const std::vector<RatFunc>& images) {
  Vars target = image_vars(images);
  std::vector<unsigned> D(images.size());
  for (std::size_t i = 0; i < D.size(); ++i) D[i] = p.degree(i);
  Poly num = substituted_numerator(p, images, D, target);
  Poly den = common_denominator(images, D, target);
  return RatFunc::make(num, den);
}

RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& images) {
  Vars target = image_vars(images);
  if (images.size() != f.vars().size()) fail(ErrorKind::ArityError, "substitution arity mismatch");
  std::vector<unsigned> D(images.size());
  for (std::size_t i = 0; i < D.size(); ++i) D[i] = std::max(f.num().degree(i), f.den().degree(i));
  Poly num = substituted_numerator(f.num(), images, D, target);
  Poly den = substituted_numerator(f.den(), images, D, target);
  if (den.is_zero()) fail(ErrorKind::CompositionUndefined, "denominator vanishes identically after substitution");
  return RatFunc::make(num, den);
}

Poly substitute_cleared(const Poly& p, const std::vector<RatFunc>& images, unsigned clear_degree) {
  Vars target = image_vars(images);
  if (p.total_degree() > clear_degree) throw std::invalid_argument("clearing degree below polynomial degree");
  std::vector<unsigned> D(images.size(), clear_degree);
  return substituted_numerator(p, images, D, target);
}

std::vector<Exponent> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, d);
  auto order = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) { return order.compare(a, b) > 0; });
  return out;
}

} // namespace sdyn

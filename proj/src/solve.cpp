#include "sdyn/solve.hpp"

#include "sdyn/errors.hpp"

#include <algorithm>
#include <set>

namespace sdyn {

namespace {

using Coeffs = std::vector<FieldElem>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Positive divisors of |n|, or nullopt when n resists trial factoring.
std::optional<std::vector<Integer>> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, unsigned>> factors;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(Integer(p), e);
  }
  if (n > 1) {
    if (n >= Integer(100000) * 100000 && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return std::nullopt;
    factors.emplace_back(n, 1);
  }
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

// Rational roots of a polynomial with rational coefficients.
PointSet rational_roots(Coeffs c) {
  PointSet out;
  std::vector<Rational> q;
  for (const auto& e : c) q.push_back(e.rational_value());
  Integer lcm_den = 1;
  for (const auto& v : q) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> a;
  for (const auto& v : q) a.push_back(Integer(v * lcm_den));
  auto lead = divisors(a.back()), tail = divisors(a.front());
  if (!lead || !tail) {
    out.complete = false;
    return out;
  }
  if (lead->size() * tail->size() > 200000) {
    out.complete = false;
    return out;
  }
  std::set<Rational> found;
  for (const auto& p : *tail)
    for (const auto& d : *lead)
      for (int s : {1, -1}) {
        Rational r(p * s, d);
        r.canonicalize();
        if (found.count(r)) continue;
        Rational v = 0;
        for (std::size_t i = q.size(); i-- > 0;) v = v * r + q[i];
        if (v == 0) found.insert(r);
      }
  for (const auto& r : found) out.points.push_back({FieldElem(r)});
  return out;
}

} // namespace

PointSet roots_in_field(const std::vector<FieldElem>& coeffs) {
  Coeffs c = coeffs;
  trim(c);
  PointSet out;
  if (c.empty()) {
    out.complete = false;
    return out;
  }
  std::vector<FieldElem> roots;
  if (c.front().is_zero()) {
    roots.push_back(FieldElem(0));
    std::size_t k = 0;
    while (c[k].is_zero()) ++k;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  }
  while (c.size() > 1) {
    if (c.size() == 2) {
      roots.push_back(-c[0] / c[1]);
      break;
    }
    bool rational = std::all_of(c.begin(), c.end(), [](const FieldElem& e) { return e.is_rational(); });
    if (rational) {
      auto rr = rational_roots(c);
      for (auto& p : rr.points) roots.push_back(p[0]);
      out.complete = out.complete && rr.complete;
      break;
    }
    // Higher-degree factors over a function field are not split.
    out.complete = false;
    break;
  }
  std::set<std::string> seen;
  std::vector<std::pair<std::string, FieldElem>> sorted;
  for (const auto& r : roots)
    if (seen.insert(r.to_string()).second) sorted.emplace_back(r.to_string(), r);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [s, r] : sorted) out.points.push_back({r});
  return out;
}

Poly specialize(const Poly& p, std::size_t index, const FieldElem& value, const Vars& target) {
  Poly out(target);
  std::vector<FieldElem> powers{FieldElem(1)};
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[index]) powers.push_back(powers.back() * value);
    Exponent r;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != index) r.push_back(e[i]);
    out += Poly::monomial(target, r, c * powers[e[index]]);
  }
  return out;
}

PointSet rational_points(const IdealRep& ideal) {
  PointSet out;
  const Vars& vars = ideal.vars();
  if (vars.size() == 0) {
    if (!ideal.is_zero() && ideal.is_unit()) return out;
    out.points.push_back({});
    return out;
  }
  if (ideal.is_zero()) {
    out.complete = false;
    return out;
  }
  const auto& gb = ideal.basis(MonomialOrder::lex());
  if (gb.size() == 1 && gb.front().is_constant()) return out;
  const std::size_t last = vars.size() - 1;
  const Poly* uni = nullptr;
  for (const auto& g : gb) {
    bool only_last = true;
    for (const auto& [e, c] : g.terms())
      for (std::size_t i = 0; i < last; ++i)
        if (e[i]) only_last = false;
    if (only_last) {
      uni = &g;
      break;
    }
  }
  if (!uni) {
    out.complete = false;
    return out;
  }
  std::vector<FieldElem> coeffs(uni->degree(last) + 1);
  for (const auto& [e, c] : uni->terms()) coeffs[e[last]] = c;
  PointSet roots = roots_in_field(coeffs);
  out.complete = roots.complete;
  std::vector<std::string> rest_names(vars.names().begin(), vars.names().end() - 1);
  Vars rest(rest_names);
  for (const auto& r : roots.points) {
    std::vector<Poly> gens;
    for (const auto& g : gb) gens.push_back(specialize(g, last, r[0], rest));
    PointSet sub = rational_points(IdealRep(rest, std::move(gens), ideal.limits()));
    out.complete = out.complete && sub.complete;
    for (auto& p : sub.points) {
      p.push_back(r[0]);
      out.points.push_back(std::move(p));
    }
  }
  return out;
}

std::optional<std::vector<FieldElem>> solve_unique(const IdealRep& ideal) {
  const std::size_t n = ideal.vars().size();
  if (n == 0) return std::vector<FieldElem>{};
  if (ideal.is_zero()) return std::nullopt;
  const auto& gb = ideal.basis(MonomialOrder::lex());
  if (gb.size() != n) return std::nullopt;
  std::vector<FieldElem> point(n);
  std::vector<bool> seen(n, false);
  for (const auto& g : gb) {
    std::optional<std::size_t> var;
    FieldElem constant(0);
    for (const auto& [e, c] : g.terms()) {
      unsigned d = total_degree(e);
      if (d == 0) {
        constant = c;
        continue;
      }
      if (d != 1 || var) return std::nullopt;
      var = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1) - e.begin());
    }
    if (!var || seen[*var]) return std::nullopt;
    seen[*var] = true;
    point[*var] = -constant;
  }
  return point;
}

} // namespace sdyn

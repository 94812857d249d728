#include "sdyn/ideal.hpp"

#include "sdyn/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sdyn {

namespace {

using Term = std::pair<Exponent, FieldElem>;

struct GPoly {
  std::vector<Term> terms;  // descending under the active order
  unsigned sugar = 0;
  const Exponent& lm() const { return terms.front().first; }
};

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm_of(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent minus(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

Exponent plus(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Desc {
  const MonomialOrder* order;
  bool operator()(const Exponent& a, const Exponent& b) const { return order->compare(a, b) > 0; }
};

using Work = std::map<Exponent, FieldElem, Desc>;

void make_monic(GPoly& g) {
  if (g.terms.empty() || g.terms.front().second.is_one()) return;
  FieldElem inv = g.terms.front().second.inverse();
  for (auto& t : g.terms) t.second *= inv;
}

GPoly to_gpoly(const Poly& p, const MonomialOrder& order) {
  GPoly g;
  g.terms.assign(p.terms().begin(), p.terms().end());
  std::sort(g.terms.begin(), g.terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.first, b.first) > 0; });
  g.sugar = p.is_zero() ? 0 : p.total_degree();
  return g;
}

Poly to_poly(const GPoly& g, const Vars& vars) {
  Poly p(vars);
  for (const auto& [e, c] : g.terms) p += Poly::monomial(vars, e, c);
  return p;
}

const GPoly* find_reducer(const Exponent& e, const std::vector<GPoly>& basis, const std::vector<bool>* alive) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (alive && !(*alive)[i]) continue;
    if (divides(basis[i].lm(), e)) return &basis[i];
  }
  return nullptr;
}

// Full reduction; reducers must be monic.
std::vector<Term> reduce_terms(Work work, const std::vector<GPoly>& basis, const std::vector<bool>* alive) {
  std::vector<Term> out;
  while (!work.empty()) {
    auto it = work.begin();
    const GPoly* r = find_reducer(it->first, basis, alive);
    if (!r) {
      out.emplace_back(it->first, it->second);
      work.erase(it);
      continue;
    }
    FieldElem c = it->second;
    Exponent shift = minus(it->first, r->lm());
    work.erase(it);
    for (std::size_t k = 1; k < r->terms.size(); ++k) {
      Exponent e = plus(r->terms[k].first, shift);
      FieldElem d = c * r->terms[k].second;
      auto [pos, inserted] = work.try_emplace(e, -d);
      if (!inserted) {
        pos->second -= d;
        if (pos->second.is_zero()) work.erase(pos);
      }
    }
  }
  return out;
}

GPoly spoly(const GPoly& a, const GPoly& b, const MonomialOrder& order, unsigned sugar) {
  Exponent l = lcm_of(a.lm(), b.lm());
  Exponent sa = minus(l, a.lm()), sb = minus(l, b.lm());
  Work work(Desc{&order});
  for (std::size_t k = 1; k < a.terms.size(); ++k) work.emplace(plus(a.terms[k].first, sa), a.terms[k].second);
  for (std::size_t k = 1; k < b.terms.size(); ++k) {
    Exponent e = plus(b.terms[k].first, sb);
    auto [pos, inserted] = work.try_emplace(e, -b.terms[k].second);
    if (!inserted) {
      pos->second -= b.terms[k].second;
      if (pos->second.is_zero()) work.erase(pos);
    }
  }
  GPoly g;
  g.terms.assign(work.begin(), work.end());
  g.sugar = sugar;
  return g;
}

struct Pair {
  std::size_t i, j;
  Exponent lcm;
  unsigned sugar;
};

} // namespace

std::vector<Poly> groebner(const std::vector<Poly>& generators, const MonomialOrder& order, const Limits& limits) {
  Vars vars;
  bool have_vars = false;
  std::vector<GPoly> basis;
  std::vector<bool> alive;
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](GPoly g) {
    make_monic(g);
    std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      Exponent l = lcm_of(basis[i].lm(), g.lm());
      unsigned dl = total_degree(l);
      unsigned s = std::max(basis[i].sugar + dl - total_degree(basis[i].lm()), g.sugar + dl - total_degree(g.lm()));
      pairs.push_back({i, n, l, s});
      pending.insert({i, n});
    }
    basis.push_back(std::move(g));
    alive.push_back(true);
  };

  for (const auto& p : generators) {
    if (!have_vars) {
      vars = p.vars();
      have_vars = true;
    }
    if (p.is_zero()) continue;
    GPoly g = to_gpoly(p, order);
    unsigned sugar = g.sugar;
    Work w(Desc{&order});
    w.insert(g.terms.begin(), g.terms.end());
    g.terms = reduce_terms(std::move(w), basis, &alive);
    if (g.terms.empty()) continue;
    g.sugar = sugar;
    add(std::move(g));
    if (total_degree(basis.back().lm()) == 0) break;
  }

  std::size_t reductions = 0;
  while (!pairs.empty() && !(basis.size() && total_degree(basis.back().lm()) == 0)) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return order.compare(a.lcm, b.lcm) < 0;
    });
    Pair p = *best;
    pairs.erase(best);
    pending.erase({p.i, p.j});
    const GPoly& a = basis[p.i];
    const GPoly& b = basis[p.j];
    if (coprime(a.lm(), b.lm())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!divides(basis[k].lm(), p.lcm)) continue;
      auto key = [](std::size_t x, std::size_t y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
      if (!pending.count(key(p.i, k)) && !pending.count(key(p.j, k))) chain = true;
    }
    if (chain) continue;
    if (++reductions > limits.max_pair_reductions)
      fail(ErrorKind::ResourceLimit, "Groebner basis exceeded " + std::to_string(limits.max_pair_reductions) +
                                         " pair reductions");
    GPoly s = spoly(a, b, order, p.sugar);
    if (s.terms.empty()) continue;
    Work w(Desc{&order});
    w.insert(s.terms.begin(), s.terms.end());
    s.terms = reduce_terms(std::move(w), basis, nullptr);
    if (s.terms.empty()) continue;
    add(std::move(s));
  }

  // Minimalize and inter-reduce.
  std::vector<GPoly> minimal;
  if (!basis.empty() && total_degree(basis.back().lm()) == 0) {
    GPoly one;
    one.terms.emplace_back(basis.back().lm(), FieldElem(1));
    minimal.push_back(one);
  } else {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
        if (i == j) continue;
        if (divides(basis[j].lm(), basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[i]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const GPoly& x, const GPoly& y) { return order.compare(x.lm(), y.lm()) > 0; });
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<GPoly> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Work w(Desc{&order});
      w.insert(minimal[i].terms.begin() + 1, minimal[i].terms.end());
      auto tail = reduce_terms(std::move(w), others, nullptr);
      minimal[i].terms.resize(1);
      minimal[i].terms.insert(minimal[i].terms.end(), tail.begin(), tail.end());
    }
  }
  std::vector<Poly> out;
  for (const auto& g : minimal) out.push_back(to_poly(g, vars));
  return out;
}

Poly reduce(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& order) {
  std::vector<GPoly> gs;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    GPoly g = to_gpoly(b, order);
    make_monic(g);
    gs.push_back(std::move(g));
  }
  Work w(Desc{&order});
  w.insert(p.terms().begin(), p.terms().end());
  GPoly r;
  r.terms = reduce_terms(std::move(w), gs, nullptr);
  return to_poly(r, p.vars());
}

IdealRep::IdealRep(Vars vars, std::vector<Poly> generators, Limits limits)
    : vars_(std::move(vars)), limits_(limits), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    generators_.push_back(g.vars() == vars_ ? std::move(g) : g.embed(vars_));
  }
}

const std::vector<Poly>& IdealRep::basis(const MonomialOrder& order) const {
  {
    std::lock_guard lock(cache_->mutex);
    for (const auto& [o, b] : cache_->bases)
      if (o == order) return *b;
  }
  auto computed = std::make_shared<const std::vector<Poly>>(groebner(generators_, order, limits_));
  std::lock_guard lock(cache_->mutex);
  for (const auto& [o, b] : cache_->bases)
    if (o == order) return *b;
  cache_->bases.emplace_back(order, computed);
  return *computed;
}

Poly IdealRep::normal_form(const Poly& p, const MonomialOrder& order) const {
  const Poly& q = p.vars() == vars_ ? p : p.embed(vars_);
  if (generators_.empty()) return q;
  return reduce(q, basis(order), order);
}

bool IdealRep::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().is_constant();
}

bool IdealRep::is_zero() const { return generators_.empty(); }

IdealRep IdealRep::embed(const Vars& target) const {
  std::vector<Poly> gens;
  for (const auto& g : generators_) gens.push_back(g.embed(target));
  return IdealRep(target, std::move(gens), limits_);
}

IdealRep IdealRep::plus(const std::vector<Poly>& more) const {
  std::vector<Poly> gens = generators_;
  gens.insert(gens.end(), more.begin(), more.end());
  return IdealRep(vars_, std::move(gens), limits_);
}

std::string IdealRep::to_string(const MonomialOrder& order) const {
  std::ostringstream os;
  os << "<";
  const auto& b = basis(order);
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? ", " : "") << b[i].to_string();
  os << ">";
  return os.str();
}

bool same_ideal(const IdealRep& a, const IdealRep& b) {
  if (!(a.vars() == b.vars())) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  return a.basis() == b.basis();
}

bool ideal_subset(const IdealRep& a, const IdealRep& b) {
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

Poly rename_vars(const Poly& p, const Vars& target) {
  if (target.size() != p.vars().size()) fail(ErrorKind::InvalidArgument, "rename_vars: arity mismatch");
  Poly out(target);
  for (const auto& [e, c] : p.terms()) out += Poly::monomial(target, e, c);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name)) name += "'";
  return name;
}

IdealRep eliminate(const IdealRep& ideal, const std::vector<std::string>& drop) {
  std::set<std::string> dropped(drop.begin(), drop.end());
  std::vector<std::string> order_names(drop.begin(), drop.end());
  std::vector<std::string> keep;
  for (const auto& n : ideal.vars().names())
    if (!dropped.count(n)) keep.push_back(n);
  order_names.insert(order_names.end(), keep.begin(), keep.end());
  Vars ring(order_names), kept(keep);
  if (ideal.is_zero()) return IdealRep::zero(kept, ideal.limits());
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed(ring));
  auto gb = groebner(gens, MonomialOrder::elimination(drop.size()), ideal.limits());
  std::vector<Poly> out;
  for (const auto& g : gb) {
    bool free = true;
    for (const auto& [e, c] : g.terms())
      for (std::size_t i = 0; i < drop.size(); ++i)
        if (e[i]) free = false;
    if (free) out.push_back(g.embed(kept));
  }
  return IdealRep(kept, std::move(out), ideal.limits());
}

IdealRep saturate(const IdealRep& ideal, const Poly& d) {
  if (d.is_zero()) fail(ErrorKind::InvalidArgument, "saturation by zero");
  if (d.is_constant() || ideal.is_zero()) return ideal;
  std::set<std::string> taken(ideal.vars().names().begin(), ideal.vars().names().end());
  std::string s = fresh_name("_sat", taken);
  Vars ring = Vars({s}).concat(ideal.vars());
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed(ring));
  gens.push_back(Poly(ring, FieldElem(1)) - Poly::variable(ring, s) * d.embed(ring));
  return eliminate(IdealRep(ring, std::move(gens), ideal.limits()), {s});
}

IdealRep image_closure(const std::vector<RatFunc>& components, const IdealRep& source, const Vars& target) {
  if (components.size() != target.size()) fail(ErrorKind::InvalidArgument, "image_closure: arity mismatch");
  const Vars& src = source.vars();
  std::set<std::string> taken(src.names().begin(), src.names().end());
  for (const auto& c : components) {
    auto syms = c.num().coefficient_symbols();
    taken.insert(syms.begin(), syms.end());
    syms = c.den().coefficient_symbols();
    taken.insert(syms.begin(), syms.end());
  }
  std::vector<std::string> tmp;
  for (std::size_t i = 0; i < target.size(); ++i) {
    tmp.push_back(fresh_name("_y" + std::to_string(i), taken));
    taken.insert(tmp.back());
  }
  std::string s = fresh_name("_sat", taken);
  std::vector<std::string> names{s};
  names.insert(names.end(), src.names().begin(), src.names().end());
  names.insert(names.end(), tmp.begin(), tmp.end());
  Vars ring(names);

  std::vector<Poly> gens;
  for (const auto& g : source.generators()) gens.push_back(g.embed(ring));
  Poly dens(ring, FieldElem(1));
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i].vars() == src ? components[i] : components[i].rebase(src);
    if (!c.is_polynomial() && source.contains(c.den()))
      fail(ErrorKind::MapUndefinedOnX, "denominator " + c.den().to_string() + " vanishes on the source");
    Poly num = c.num().embed(ring), den = c.den().embed(ring);
    gens.push_back(den * Poly::variable(ring, tmp[i]) - num);
    if (!c.is_polynomial()) dens = dens * den;
  }
  gens.push_back(Poly(ring, FieldElem(1)) - Poly::variable(ring, s) * dens);
  std::vector<std::string> drop{s};
  drop.insert(drop.end(), src.names().begin(), src.names().end());
  IdealRep elim = eliminate(IdealRep(ring, std::move(gens), source.limits()), drop);
  std::vector<Poly> out;
  for (const auto& g : elim.generators()) out.push_back(rename_vars(g, target));
  return IdealRep(target, std::move(out), source.limits());
}

int dimension(const IdealRep& ideal) {
  const std::size_t n = ideal.vars().size();
  if (ideal.is_zero()) return static_cast<int>(n);
  if (ideal.is_unit()) return -1;
  std::vector<Exponent> lms;
  for (const auto& g : ideal.basis()) lms.push_back(g.leading_term(MonomialOrder::grevlex()).first);
  int best = 0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    int size = __builtin_popcountl(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& e : lms) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (e[i] && !(mask >> i & 1ul)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::vector<Exponent> standard_monomials(const IdealRep& ideal, unsigned d) {
  auto all = monomials_up_to(ideal.vars().size(), d);
  if (ideal.is_zero()) return all;
  std::vector<Exponent> lms;
  for (const auto& g : ideal.basis()) lms.push_back(g.leading_term(MonomialOrder::grevlex()).first);
  std::vector<Exponent> out;
  for (const auto& e : all) {
    bool hit = false;
    for (const auto& l : lms)
      if (divides(l, e)) {
        hit = true;
        break;
      }
    if (!hit) out.push_back(e);
  }
  return out;
}

} // namespace sdyn

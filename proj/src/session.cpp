#include "sdyn/session.hpp"

#include "sdyn/errors.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace sdyn {

namespace {

using dsl::Command;

Json strings(const std::vector<Poly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Json strings(const std::vector<FieldElem>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(e.to_string());
  return out;
}

Json strings(const std::vector<RatFunc>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(f.to_string());
  return out;
}

Json strings(const std::vector<std::string>& ss) {
  Json out = Json::array();
  for (const auto& s : ss) out.push_back(s);
  return out;
}

std::string fraction_text(const Poly& num, const Poly& den) {
  if (den.is_constant() && den.constant_term().is_one()) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

Json certificate_json(const Certificate& c) {
  return Json{{"name", c.name}, {"ok", c.ok}, {"residuals", strings(c.residuals)}};
}

Certificate map_residuals(const std::string& name, const RationalMap& lhs, const RationalMap& rhs) {
  Certificate c{name, true, {}};
  const IdealRep& ideal = lhs.source().ideal();
  for (std::size_t i = 0; i < lhs.components().size(); ++i) {
    const RatFunc& a = lhs.components()[i];
    const RatFunc& b = rhs.components()[i];
    Poly r = ideal.normal_form(a.num() * b.den() - b.num() * a.den());
    c.ok = c.ok && r.is_zero();
    c.residuals.push_back(r.to_string());
  }
  return c;
}

unsigned uint_flag(const Command& c, const char* key, unsigned fallback) {
  auto v = c.flag(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    long n = std::stol(*v, &used);
    if (used != v->size() || n < 0 || n > 100000) throw std::invalid_argument("range");
    return static_cast<unsigned>(n);
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, std::string("--") + key + " needs a non-negative integer");
  }
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << ms;
  return os.str();
}

void render(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render(os, k, x, indent + 2);
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& x : v) flat = flat && !x.is_object() && !x.is_array();
    if (v.empty()) {
      os << pad << key << ": (none)\n";
    } else if (flat) {
      os << pad << key << ":\n";
      for (const auto& x : v) os << pad << "  " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    } else {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) render(os, "[" + std::to_string(i) + "]", v[i], indent + 2);
    }
  } else {
    os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

} // namespace

int worse(int a, int b) {
  auto rank = [](int s) { return s == kInputError ? 3 : s == kIncomplete ? 2 : s == kCheckFailed ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

int status_for(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ResourceLimit:
  case ErrorKind::PresentationIncomplete:
  case ErrorKind::NonAffineRho:
    return kIncomplete;
  case ErrorKind::FibreUndefined:
  case ErrorKind::FibreMismatch:
  case ErrorKind::NotInH0:
  case ErrorKind::CompositionUndefined:
  case ErrorKind::MapUndefinedOnX:
  case ErrorKind::OrbitLeavesDomain:
  case ErrorKind::NotFound:
    return kCheckFailed;
  default:
    return kInputError;
  }
}

Json Report::to_json(bool with_timing) const {
  Json certs = Json::array();
  for (const auto& c : certificates) certs.push_back(certificate_json(c));
  Json out{{"schema", kReportSchema}, {"command", command}, {"inputs", inputs}, {"result", result},
           {"certificates", certs}, {"flags", flags}, {"status", status}};
  if (!error.empty()) out["error"] = error;
  if (with_timing) out["timing"] = Json{{"elapsed_ms", format_ms(elapsed_ms)}};
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << command << " ==\n";
  if (!error.empty()) os << "error: " << error << "\n";
  for (const auto& [k, v] : result.items()) render(os, k, v, 0);
  for (const auto& c : certificates) {
    os << "certificate " << c.name << ": " << (c.ok ? "PASS" : "FAIL") << "\n";
    if (!c.ok)
      for (const auto& r : c.residuals) os << "  residual " << r << "\n";
  }
  for (const auto& [k, v] : flags.items()) os << "flag " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  os << "status: " << status << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Declarations

Session::Session(const dsl::Script& script, SessionOptions options) : options_(options) {
  for (std::size_t i = 0; i < script.statements.size(); ++i) {
    try {
      declare(script.statements[i]);
    } catch (const Error& e) {
      int line = i < script.lines.size() ? script.lines[i] : 0;
      throw Error(e.kind(), "line " + std::to_string(line) + ": " + e.what());
    }
  }
}

void Session::claim(const std::string& name) {
  if (field_.is_generator(name)) fail(ErrorKind::NameError, "'" + name + "' is a field generator");
  if (!names_.insert(name).second) fail(ErrorKind::NameError, "'" + name + "' is declared twice");
}

RatFunc Session::eval(const dsl::Expr& e, const Vars& vars) const {
  using K = dsl::Expr::Kind;
  switch (e.kind) {
  case K::Number:
    return RatFunc(vars, FieldElem(Rational(Integer(e.text))));
  case K::Name:
    if (vars.contains(e.text)) return RatFunc::variable(vars, e.text);
    if (field_.is_generator(e.text)) return RatFunc(vars, FieldElem::symbol(e.text));
    fail(ErrorKind::NameError, "unknown name '" + e.text + "'");
  case K::Neg:
    return -eval(e.args[0], vars);
  case K::Pow: {
    long n = std::stol(e.text);
    if (n > 1000 || n < -1000) fail(ErrorKind::InvalidArgument, "exponent too large");
    return eval(e.args[0], vars).pow(static_cast<int>(n));
  }
  case K::Add:
    return eval(e.args[0], vars) + eval(e.args[1], vars);
  case K::Sub:
    return eval(e.args[0], vars) - eval(e.args[1], vars);
  case K::Mul:
    return eval(e.args[0], vars) * eval(e.args[1], vars);
  case K::Div:
    return eval(e.args[0], vars) / eval(e.args[1], vars);
  }
  fail(ErrorKind::SyntaxError, "bad expression");
}

Point Session::eval_point(const std::vector<dsl::Expr>& coords) const {
  Point out;
  for (const auto& c : coords) {
    RatFunc r = eval(c, Vars());
    out.push_back(r.num().constant_term() / r.den().constant_term());
  }
  return out;
}

AffineVariety Session::product(const std::vector<std::string>& factors) const {
  if (factors.size() == 1) return variety(factors[0]);
  Vars ring;
  std::vector<Poly> gens;
  for (const auto& f : factors) {
    const AffineVariety& v = variety(f);
    Vars names = disjoint_names(v.vars(), ring);
    Vars next = ring.concat(names);
    for (const auto& g : v.ideal().generators()) gens.push_back(rename_vars(g, names).embed(next));
    ring = next;
  }
  std::vector<Poly> lifted;
  for (const auto& g : gens) lifted.push_back(g.embed(ring));
  return AffineVariety(IdealRep(ring, lifted, options_.limits));
}

void Session::declare(const dsl::Statement& st) {
  if (const auto* f = std::get_if<dsl::FieldDecl>(&st)) {
    if (field_declared_ || others_declared_) fail(ErrorKind::InvalidField, "the field must be declared once, first");
    field_declared_ = true;
    Vars none;
    auto images = [&](const std::vector<dsl::Subst>& ss) {
      std::vector<FieldElem> out(f->generators.size());
      std::vector<bool> seen(f->generators.size(), false);
      for (const auto& [n, e] : ss) {
        auto it = std::find(f->generators.begin(), f->generators.end(), n);
        if (it == f->generators.end()) fail(ErrorKind::NameError, "'" + n + "' is not a generator");
        std::size_t i = static_cast<std::size_t>(it - f->generators.begin());
        RatFunc r = eval(e, none);
        out[i] = r.num().constant_term() / r.den().constant_term();
        seen[i] = true;
      }
      for (std::size_t i = 0; i < out.size(); ++i)
        if (!seen[i]) out[i] = FieldElem::symbol(f->generators[i]);
      return out;
    };
    std::vector<FieldElem> ids;
    for (const auto& g : f->generators) ids.push_back(FieldElem::symbol(g));
    field_ = DifferenceField(f->generators, ids, ids);
    field_ = DifferenceField(f->generators, images(f->sigma), images(f->inverse));
    return;
  }
  others_declared_ = true;
  if (const auto* v = std::get_if<dsl::VarietyDecl>(&st)) {
    claim(v->name);
    std::set<std::string> seen;
    for (const auto& a : v->ambient) {
      if (field_.is_generator(a)) fail(ErrorKind::NameError, "'" + a + "' is a field generator");
      if (!seen.insert(a).second) fail(ErrorKind::NameError, "ambient variable '" + a + "' repeated");
    }
    Vars vars(v->ambient);
    std::vector<Poly> gens;
    for (const auto& e : v->ideal) {
      RatFunc r = eval(e, vars);
      if (!r.is_polynomial()) fail(ErrorKind::InvalidVariety, "ideal generators must be polynomials");
      gens.push_back(r.num());
    }
    varieties_.emplace(v->name, AffineVariety(IdealRep(vars, gens, options_.limits)));
  } else if (const auto* m = std::get_if<dsl::MapDecl>(&st)) {
    claim(m->name);
    AffineVariety src = product(m->source), dst = product(m->target);
    if (m->components.size() != dst.vars().size())
      fail(ErrorKind::ArityError, "map " + m->name + " needs " + std::to_string(dst.vars().size()) + " components");
    std::vector<RatFunc> comps;
    for (const auto& e : m->components) comps.push_back(eval(e, src.vars()));
    maps_.emplace(m->name, RationalMap(src, dst, comps));
  } else if (const auto* s = std::get_if<dsl::SigmaDecl>(&st)) {
    claim(s->name);
    const AffineVariety& v = variety(s->variety);
    const RationalMap& phi = map(s->map);
    if (!(phi.source().vars() == v.vars()) || !(phi.target().vars() == v.vars()))
      fail(ErrorKind::ArityError, "map " + s->map + " must go from " + s->variety + " to itself");
    sigmas_.emplace(s->name, SigmaVariety(field_, v, phi.components()));
  } else if (const auto* t = std::get_if<dsl::TrivializationDecl>(&st)) {
    claim(t->name);
    std::map<std::string, std::string> e;
    for (const auto& [k, v] : t->entries)
      if (!e.emplace(k, v).second) fail(ErrorKind::SyntaxError, "key " + k + " repeated");
    for (const char* k : {"S", "Z", "Y", "g", "f"})
      if (!e.count(k)) fail(ErrorKind::SyntaxError, std::string("trivialization needs ") + k);
    if (e.size() != 5) fail(ErrorKind::SyntaxError, "trivialization keys are S, Z, Y, g, f");
    Trivialization tr{sigma(e["S"]), sigma(e["Z"]), variety(e["Y"]), map(e["g"]), map(e["f"])};
    std::size_t n = tr.dim_v(), m = tr.dim_z();
    if (tr.y.vars().size() < m) fail(ErrorKind::ArityError, "Y has fewer coordinates than Z");
    if (tr.g.source().vars().size() != n + m || tr.f.target().vars().size() != n + m)
      fail(ErrorKind::ArityError, "g must start and f must end on V x Z");
    if (!(tr.g.target().vars() == tr.y.vars()) || !(tr.f.source().vars() == tr.y.vars()))
      fail(ErrorKind::ArityError, "g must end and f must start on Y");
    trivs_.emplace(t->name, tr);
  } else if (const auto* p = std::get_if<dsl::PointDecl>(&st)) {
    claim(p->name);
    points_.emplace(p->name, eval_point(p->coords));
  } else if (const auto* fn = std::get_if<dsl::FunctionDecl>(&st)) {
    claim(fn->name);
    const Vars* vars = nullptr;
    if (varieties_.count(fn->variety)) vars = &varieties_.at(fn->variety).vars();
    else if (sigmas_.count(fn->variety)) vars = &sigmas_.at(fn->variety).vars();
    else fail(ErrorKind::NameError, "unknown variety '" + fn->variety + "'");
    functions_.emplace(fn->name, eval(fn->expr, *vars));
  } else if (const auto* c = std::get_if<dsl::Command>(&st)) {
    commands_.push_back(*c);
  }
}

namespace {
template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) fail(ErrorKind::NameError, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}
} // namespace

const AffineVariety& Session::variety(const std::string& n) const { return lookup(varieties_, n, "variety"); }
const RationalMap& Session::map(const std::string& n) const { return lookup(maps_, n, "map"); }
const SigmaVariety& Session::sigma(const std::string& n) const { return lookup(sigmas_, n, "sigma-variety"); }
const Trivialization& Session::trivialization(const std::string& n) const { return lookup(trivs_, n, "trivialization"); }
const Point& Session::point(const std::string& n) const { return lookup(points_, n, "point"); }
const RatFunc& Session::function(const std::string& n) const { return lookup(functions_, n, "function"); }

// ---------------------------------------------------------------------------
// Commands

class CommandRunner {
public:
  CommandRunner(const Session& s, const Command& c, Report& r) : s_(s), c_(c), r_(r) {}

  void run() {
    static const std::map<std::string, void (CommandRunner::*)()> table = {
        {"check-equivariance", &CommandRunner::check_equivariance},
        {"check-invariant-subvariety", &CommandRunner::check_invariant_subvariety},
        {"graph", &CommandRunner::graph_cmd},
        {"prolong", &CommandRunner::prolong},
        {"canonical-base", &CommandRunner::canonical_base_cmd},
        {"invariants", &CommandRunner::invariants},
        {"darboux", &CommandRunner::darboux},
        {"orthogonality-profile", &CommandRunner::orthogonality},
        {"verify-trivialization", &CommandRunner::verify_trivialization_cmd},
        {"binding-group", &CommandRunner::binding_group},
        {"verify-intertwining", &CommandRunner::verify_intertwining_cmd},
        {"sharp-solve", &CommandRunner::sharp_solve},
        {"translational-witness", &CommandRunner::translational},
        {"orbit-density", &CommandRunner::orbit_density},
        {"dme", &CommandRunner::dme},
        {"power-bound", &CommandRunner::power_bound},
    };
    auto it = table.find(c_.name);
    if (it == table.end()) fail(ErrorKind::NameError, "unknown command '" + c_.name + "'");
    (this->*(it->second))();
    for (const auto& cert : r_.certificates)
      if (!cert.ok) r_.status = worse(r_.status, kCheckFailed);
  }

private:
  const std::string& arg(std::size_t i) const {
    if (i >= c_.args.size()) fail(ErrorKind::ArityError, c_.name + " needs more arguments");
    return c_.args[i];
  }

  void no_more(std::size_t used) const {
    if (c_.args.size() > used) fail(ErrorKind::ArityError, c_.name + " has unexpected argument '" + c_.args[used] + "'");
  }

  // A sigma-variety name, or a variety and a map.
  SigmaVariety sigma_arg(std::size_t& i) const {
    const std::string& a = arg(i);
    if (s_.sigmas_.count(a)) {
      ++i;
      return s_.sigmas_.at(a);
    }
    if (s_.varieties_.count(a) && i + 1 < c_.args.size() && s_.maps_.count(c_.args[i + 1])) {
      const AffineVariety& v = s_.varieties_.at(a);
      const RationalMap& m = s_.maps_.at(c_.args[i + 1]);
      if (!(m.source().vars() == v.vars()) || !(m.target().vars() == v.vars()))
        fail(ErrorKind::ArityError, "map " + c_.args[i + 1] + " must go from " + a + " to itself");
      i += 2;
      return SigmaVariety(s_.field_, v, m.components());
    }
    fail(ErrorKind::NameError, "'" + a + "' is not a sigma-variety (or a variety followed by a map)");
  }

  SigmaVariety sigma_only() const {
    std::size_t i = 0;
    SigmaVariety s = sigma_arg(i);
    no_more(i);
    return s;
  }

  const Trivialization& triv_only() const {
    no_more(1);
    return s_.trivialization(arg(0));
  }

  SearchOptions search() const {
    SearchOptions o;
    o.coeff_degree = uint_flag(c_, "coeff-degree", 0);
    o.max_unknowns = uint_flag(c_, "max-unknowns", static_cast<unsigned>(o.max_unknowns));
    return o;
  }

  Point point_flag() const {
    auto v = c_.flag("point");
    if (!v || v->empty()) fail(ErrorKind::ArityError, c_.name + " needs --point");
    if (s_.points_.count(*v)) return s_.points_.at(*v);
    auto script = dsl::parse("point _ = " + *v);
    return s_.eval_point(std::get<dsl::PointDecl>(script.statements.at(0)).coords);
  }

  Json basis(const IdealRep& i) const { return strings(i.basis(s_.options_.order)); }

  void incomplete(bool complete) {
    r_.flags["complete"] = complete;
    if (!complete) r_.status = worse(r_.status, kIncomplete);
  }

  void check_equivariance() {
    no_more(3);
    const RationalMap& g = s_.map(arg(0));
    std::size_t i = 1;
    SigmaVariety src = sigma_arg(i);
    SigmaVariety dst = sigma_arg(i);
    auto lhs = compose(dst.phi(), g);
    auto rhs = compose(sigma_transform(g, s_.field_, 1), src.phi());
    Certificate c = map_residuals("equivariance", lhs, rhs);
    r_.result["equivariant"] = c.ok;
    r_.certificates.push_back(c);
    if (c.ok) {
      bool inv = is_invariant_subvariety(graph(g), sdyn::product(src, dst));
      r_.result["graph_invariant"] = inv;
      r_.certificates.push_back({"graph invariant", inv, {}});
    }
  }

  void check_invariant_subvariety() {
    no_more(2);
    const AffineVariety& x = s_.variety(arg(0));
    std::size_t i = 1;
    SigmaVariety s = sigma_arg(i);
    bool inv = is_invariant_subvariety(x, s);
    r_.result["invariant"] = inv;
    r_.certificates.push_back({"invariant subvariety", inv, {}});
  }

  void graph_cmd() {
    no_more(1);
    AffineVariety gr = graph(s_.map(arg(0)));
    r_.result["variables"] = strings(gr.vars().names());
    r_.result["ideal"] = basis(gr.ideal());
    r_.result["order"] = s_.options_.order.to_string();
  }

  void prolong() {
    SigmaVariety s = sigma_only();
    AffineVariety p = prolongation(s, uint_flag(c_, "steps", 1));
    r_.result["variables"] = strings(p.vars().names());
    r_.result["ideal"] = basis(p.ideal());
    r_.result["order"] = s_.options_.order.to_string();
  }

  void canonical_base_cmd() {
    SigmaVariety s = sigma_only();
    CanonicalBase b = canonical_base(s, uint_flag(c_, "steps", 8));
    r_.result["generators"] = strings(b.generators);
    r_.result["stabilized"] = b.stabilized;
    incomplete(b.stabilized);
  }

  void invariants() {
    SigmaVariety s = sigma_only();
    unsigned d = uint_flag(c_, "degree", 2);
    if (c_.has_flag("rational")) {
      RationalInvariants r = find_rational_invariants(s, d, search());
      Json list = Json::array();
      for (const auto& f : r.invariants) list.push_back(f.lambda.to_string());
      r_.result["invariants"] = list;
      r_.result["notes"] = strings(r.notes);
      for (const auto& f : r.invariants) {
        InvariantCheck chk = verify_invariant(f.lambda, s);
        r_.certificates.push_back({"invariant " + f.lambda.to_string(), chk.holds, {chk.residual.to_string()}});
      }
      incomplete(r.complete);
    } else {
      PolynomialInvariants r = find_polynomial_invariants(s, d, search());
      r_.result["basis"] = strings(r.basis);
      r_.result["semilinear"] = r.semilinear;
      if (r.semilinear) r_.result["coeff_degree"] = r.coeff_degree;
      for (const auto& p : r.basis) {
        InvariantCheck chk = verify_invariant(RatFunc(p), s);
        r_.certificates.push_back({"invariant " + p.to_string(), chk.holds, {chk.residual.to_string()}});
      }
    }
  }

  void darboux() {
    SigmaVariety s = sigma_only();
    DarbouxResult r = find_darboux_pairs(s, uint_flag(c_, "degree", 2), uint_flag(c_, "cofactor", 0), search());
    Json pairs = Json::array();
    for (const auto& p : r.pairs)
      pairs.push_back(Json{{"p", p.p.to_string()}, {"cofactor", p.cofactor.to_string()}, {"residual", p.residual.to_string()}});
    r_.result["pairs"] = pairs;
    r_.result["notes"] = strings(r.notes);
    incomplete(r.complete);
  }

  Json profile_json(const OrthogonalityProfile& p) const {
    Json entries = Json::array();
    for (const auto& e : p.entries) {
      Json found = Json::array();
      for (const auto& f : e.found) found.push_back(f.lambda.to_string());
      entries.push_back(Json{{"n", e.n}, {"found", found}, {"complete", e.complete}});
    }
    Json out{{"degree", p.degree}, {"n_max", p.n_max}};
    out["first_hit"] = p.first_hit ? Json(*p.first_hit) : Json(nullptr);
    out["entries"] = entries;
    return out;
  }

  void orthogonality() {
    SigmaVariety s = sigma_only();
    auto n = uint_flag(c_, "nmax", static_cast<unsigned>(s.vars().size()) + 3);
    OrthogonalityProfile p = orthogonality_profile(s, uint_flag(c_, "degree", 2), n, search());
    r_.result = profile_json(p);
    bool complete = true;
    for (const auto& e : p.entries) complete = complete && e.complete;
    if (!p.first_hit) incomplete(complete);
  }

  void verify_trivialization_cmd() {
    TrivializationReport rep = verify_trivialization(triv_only());
    r_.result["ok"] = rep.ok();
    r_.certificates = rep.checks;
  }

  std::vector<RatFunc> extra_lambdas() const {
    std::vector<RatFunc> out;
    for (const auto& n : c_.all("lambda")) out.push_back(s_.function(n));
    return out;
  }

  Json presentation_json(const GroupPresentation& p) const {
    Json theta = Json::array();
    for (const auto& [n, d] : p.theta) theta.push_back(fraction_text(n, d));
    Json out;
    out["chart"] = strings(p.w.names());
    out["chart_ideal"] = basis(p.w_ideal);
    out["theta"] = theta;
    out["arguments"] = Json{{"first", strings(p.w1.names())}, {"second", strings(p.w2.names())}};
    out["identity"] = strings(p.identity);
    out["multiply"] = strings(p.multiply);
    out["inverse"] = strings(p.inverse);
    out["rho"] = strings(p.rho);
    out["lambdas"] = strings(p.lambdas);
    out["h_ideal"] = basis(p.h_ideal);
    out["h_dimension"] = p.h_dimension;
    out["h_trivial"] = p.h_trivial;
    out["notes"] = strings(p.notes);
    return out;
  }

  GroupPresentation presentation(const Trivialization& t) const {
    return build_presentation(t, uint_flag(c_, "lambda-degree", 2), extra_lambdas());
  }

  void binding_group() {
    const Trivialization& t = triv_only();
    GroupPresentation p = presentation(t);
    r_.result = presentation_json(p);
    r_.certificates = p.certificates;
  }

  void verify_intertwining_cmd() {
    Certificate c = verify_intertwining(triv_only());
    r_.result["ok"] = c.ok;
    r_.certificates.push_back(c);
  }

  void sharp_solve() {
    const Trivialization& t = triv_only();
    GroupPresentation p = presentation(t);
    r_.result["chart"] = strings(p.w.names());
    r_.result["rho"] = strings(p.rho);
    if (c_.has_flag("point")) r_.result["member"] = sharp_membership(p, point_flag());
    SharpSolution sol = sharp_solve_affine(p, uint_flag(c_, "degree", 2));
    r_.result["solvable"] = sol.solvable;
    r_.result["degree_bound"] = sol.degree_bound;
    r_.result["particular"] = strings(sol.particular);
    Json dirs = Json::array();
    for (const auto& d : sol.directions) dirs.push_back(strings(d));
    r_.result["directions"] = dirs;
    r_.result["note"] = s_.field_.is_autonomous()
                            ? "points over k only; sharp points over larger fixed fields are out of reach"
                            : "rational in the field generators of degree <= the bound";
  }

  void translational() {
    const Trivialization& t = triv_only();
    GroupPresentation p = build_presentation(t, std::vector<RatFunc>{});
    Witness w = translational_witness(t.s, p);
    r_.result["chart"] = strings(p.w.names());
    r_.result["w"] = strings(w.w);
    r_.certificates.push_back(w.check);
  }

  void orbit_density() {
    SigmaVariety s = sigma_only();
    unsigned d = uint_flag(c_, "degree", 2);
    OrbitCertificate oc = zdo_orbit_density(s, point_flag(), d, uint_flag(c_, "iters", 10));
    r_.result["verdict"] = oc.dense ? "DENSE-<=" + std::to_string(d) : "NOT-DENSE-<=" + std::to_string(d);
    r_.result["slice_dim"] = oc.slice_dim;
    r_.result["ranks"] = oc.ranks;
    r_.result["vanishing"] = strings(oc.vanishing);
  }

  void dme() {
    SigmaVariety s = sigma_only();
    DMEReport r = dme_enumerate(s, uint_flag(c_, "degree", 2), uint_flag(c_, "cofactor", 0), uint_flag(c_, "points", 5),
                                search());
    Json hs = Json::array();
    for (const auto& h : r.hypersurfaces)
      hs.push_back(Json{{"p", h.p.to_string()}, {"cofactor", h.cofactor.to_string()}, {"maximal", h.maximal}});
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(Json{{"point", strings(p.a)}, {"maximal", p.maximal}});
    r_.result["verdict"] = r.verdict;
    r_.result["hypersurfaces"] = hs;
    r_.result["points"] = pts;
    r_.result["level_function"] = r.level_function ? Json(r.level_function->to_string()) : Json(nullptr);
    r_.result["level_sets"] = strings(r.level_sets);
    r_.result["notes"] = strings(r.notes);
    for (const auto& h : r.hypersurfaces) r_.certificates.push_back({"invariant " + h.p.to_string(), h.verified, {}});
    incomplete(r.verdict != "INCONCLUSIVE");
  }

  void power_bound() {
    SigmaVariety s = sigma_only();
    PowerBoundReport r = power_bound_report(s, uint_flag(c_, "degree", 2), search());
    r_.result["verdict"] = r.verdict;
    r_.result["bound"] = r.bound;
    r_.result["autonomous_bound"] = r.autonomous_bound;
    r_.result["profile"] = profile_json(r.profile);
    r_.certificates.push_back({"invariants re-verified", r.verified, {}});
    incomplete(r.verdict == "PASS");
  }

  const Session& s_;
  const Command& c_;
  Report& r_;
};

Report Session::run(const dsl::Command& cmd) const {
  Report r;
  r.command = dsl::print(dsl::Statement(cmd));
  r.inputs["args"] = strings(cmd.args);
  Json flags = Json::object();
  for (const auto& [k, v] : cmd.flags) flags[k] = v ? Json(*v) : Json(true);
  r.inputs["flags"] = flags;
  auto start = std::chrono::steady_clock::now();
  try {
    CommandRunner(*this, cmd, r).run();
  } catch (const Error& e) {
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    int st = status_for(e.kind());
    if (e.kind() == ErrorKind::NotFound && std::string(e.what()).find("budget") != std::string::npos) st = kIncomplete;
    r.status = worse(r.status, st);
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Report> Session::run_all() const {
  std::vector<Report> out;
  for (const auto& c : commands_) out.push_back(run(c));
  return out;
}

RunResult run_script(std::string_view text, const SessionOptions& options) {
  RunResult out;
  try {
    Session s(dsl::parse(text), options);
    out.reports = s.run_all();
  } catch (const Error& e) {
    out.error = std::string(to_string(e.kind())) + ": " + e.what();
    out.exit_code = kInputError;
    return out;
  }
  for (const auto& r : out.reports) out.exit_code = worse(out.exit_code, r.status);
  return out;
}

} // namespace sdyn

#include "sdyn/dsl.hpp"

#include "sdyn/errors.hpp"

#include <cctype>
#include <set>

namespace sdyn::dsl {

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, Newline, End };
  Kind kind;
  std::string text;
  int line, col;
  std::size_t offset;
};

[[noreturn]] void syntax(int line, int col, const std::string& msg) {
  fail(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (depth == 0) out.push_back({Token::Kind::Newline, "\n", line, col, i});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t start = i;
    int l = line, cc = col;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) advance(1);
      out.push_back({Token::Kind::Ident, std::string(s.substr(start, i - start)), l, cc, start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) advance(1);
      out.push_back({Token::Kind::Int, std::string(s.substr(start, i - start)), l, cc, start});
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      advance(2);
      out.push_back({Token::Kind::Sym, "->", l, cc, start});
    } else if (std::string_view("(){},;:=+-*/^").find(c) != std::string_view::npos) {
      if (c == '(' || c == '{') ++depth;
      if ((c == ')' || c == '}') && depth > 0) --depth;
      advance(1);
      out.push_back({Token::Kind::Sym, std::string(1, c), l, cc, start});
    } else {
      syntax(l, cc, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, "", line, col, s.size()});
  return out;
}

const std::set<std::string> kBooleanFlags = {"rational"};

class Parser {
public:
  Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  Script script() {
    Script out;
    for (;;) {
      while (peek().kind == Token::Kind::Newline) ++pos_;
      if (peek().kind == Token::Kind::End) break;
      int line = peek().line;
      out.statements.push_back(statement());
      out.lines.push_back(line);
      if (peek().kind != Token::Kind::Newline && peek().kind != Token::Kind::End)
        syntax(peek().line, peek().col, "expected end of line, found '" + peek().text + "'");
    }
    return out;
  }

  Expr single_expr() {
    Expr e = expr();
    while (peek().kind == Token::Kind::Newline) ++pos_;
    if (peek().kind != Token::Kind::End) syntax(peek().line, peek().col, "unexpected '" + peek().text + "'");
    return e;
  }

private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool is_word(const char* s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  [[noreturn]] void expected(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::Newline ? "end of line"
                        : t.kind == Token::Kind::End   ? "end of input"
                                                       : "'" + t.text + "'";
    syntax(t.line, t.col, "expected " + what + ", found " + found);
  }

  void expect(const char* s) {
    if (!is_sym(s)) expected(std::string("'") + s + "'");
    ++pos_;
  }
  void keyword(const char* s) {
    if (!is_word(s)) expected(std::string("'") + s + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident) expected("a name");
    return toks_[pos_++].text;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out{ident()};
    while (is_sym(",")) {
      ++pos_;
      out.push_back(ident());
    }
    return out;
  }

  Statement statement() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) expected("a declaration or command");
    if (t.text == "field") return field();
    if (t.text == "variety") return variety();
    if (t.text == "map") return map();
    if (t.text == "sigmavariety") return sigma();
    if (t.text == "trivialization") return trivialization();
    if (t.text == "point") return point();
    if (t.text == "function") return function();
    return command();
  }

  std::vector<Subst> substs() {
    std::vector<Subst> out;
    do {
      if (!out.empty()) ++pos_;
      std::string n = ident();
      expect("->");
      out.emplace_back(n, expr());
    } while (is_sym(","));
    return out;
  }

  FieldDecl field() {
    ++pos_;
    FieldDecl f;
    keyword("Q");
    if (is_sym("(")) {
      ++pos_;
      f.generators = ident_list();
      expect(")");
    }
    if (is_word("sigma")) {
      ++pos_;
      f.sigma = substs();
      keyword("inv");
      f.inverse = substs();
    }
    return f;
  }

  VarietyDecl variety() {
    ++pos_;
    VarietyDecl v;
    v.name = ident();
    keyword("ambient");
    v.ambient = ident_list();
    if (is_word("ideal")) {
      ++pos_;
      expect("{");
      while (!is_sym("}")) {
        v.ideal.push_back(expr());
        if (is_sym(";")) ++pos_;
        else if (!is_sym("}")) expected("';' or '}'");
      }
      ++pos_;
    }
    return v;
  }

  std::vector<std::string> product() {
    std::vector<std::string> out{ident()};
    while (is_sym("*")) {
      ++pos_;
      out.push_back(ident());
    }
    return out;
  }

  bool statement_end(std::size_t k) const {
    auto kind = peek(k).kind;
    return kind == Token::Kind::Newline || kind == Token::Kind::End;
  }

  // "(e1, ..., en)" ending the statement, or a single expression.
  std::vector<Expr> tuple_or_expr() {
    if (is_sym("(")) {
      std::size_t save = pos_;
      ++pos_;
      std::vector<Expr> out{expr()};
      while (is_sym(",")) {
        ++pos_;
        out.push_back(expr());
      }
      if (is_sym(")") && statement_end(1)) {
        ++pos_;
        return out;
      }
      pos_ = save;
    }
    return {expr()};
  }

  MapDecl map() {
    ++pos_;
    MapDecl m;
    m.name = ident();
    expect(":");
    m.source = product();
    expect("->");
    m.target = product();
    expect(":");
    m.components = tuple_or_expr();
    return m;
  }

  SigmaDecl sigma() {
    ++pos_;
    SigmaDecl s;
    s.name = ident();
    expect("=");
    expect("(");
    s.variety = ident();
    expect(",");
    s.map = ident();
    expect(")");
    return s;
  }

  TrivializationDecl trivialization() {
    ++pos_;
    TrivializationDecl t;
    t.name = ident();
    expect("{");
    while (!is_sym("}")) {
      std::string key = ident();
      expect("=");
      t.entries.emplace_back(key, ident());
      if (is_sym(";")) ++pos_;
      else if (!is_sym("}")) expected("';' or '}'");
    }
    ++pos_;
    return t;
  }

  PointDecl point() {
    ++pos_;
    PointDecl p;
    p.name = ident();
    expect("=");
    p.coords = tuple_or_expr();
    return p;
  }

  FunctionDecl function() {
    ++pos_;
    FunctionDecl f;
    f.name = ident();
    expect(":");
    f.variety = ident();
    expect(":");
    f.expr = expr();
    return f;
  }

  Command command() {
    std::size_t start = peek().offset;
    while (!statement_end(0)) ++pos_;
    std::string_view raw = src_.substr(start, peek().offset - start);
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    std::vector<std::string> words;
    std::string cur;
    int depth = 0;
    for (char c : raw) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) words.push_back(std::move(cur));
        cur.clear();
      } else if (depth > 0 && std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty() && cur.back() != ' ') cur += ' ';
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    Command cmd;
    cmd.name = words.front();
    for (std::size_t i = 1; i < words.size(); ++i) {
      const std::string& w = words[i];
      if (w.rfind("--", 0) == 0) {
        std::string key = w.substr(2);
        if (key.empty()) syntax(toks_[pos_].line, 1, "empty flag name");
        if (!kBooleanFlags.count(key) && i + 1 < words.size() && words[i + 1].rfind("--", 0) != 0)
          cmd.flags.emplace_back(key, words[++i]);
        else
          cmd.flags.emplace_back(key, std::nullopt);
      } else {
        cmd.args.push_back(w);
      }
    }
    return cmd;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_sym("+") || is_sym("-")) {
      auto kind = peek().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      lhs = Expr{kind, "", {std::move(lhs), term()}};
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_sym("*") || is_sym("/")) {
      auto kind = peek().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      lhs = Expr{kind, "", {std::move(lhs), unary()}};
    }
    return lhs;
  }

  Expr unary() {
    if (is_sym("-")) {
      ++pos_;
      return Expr{Expr::Kind::Neg, "", {unary()}};
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!is_sym("^")) return base;
    ++pos_;
    std::string sign;
    if (is_sym("-")) {
      ++pos_;
      sign = "-";
    }
    if (peek().kind != Token::Kind::Int) expected("an integer exponent");
    return Expr{Expr::Kind::Pow, sign + toks_[pos_++].text, {std::move(base)}};
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      ++pos_;
      return Expr::number(t.text);
    }
    if (t.kind == Token::Kind::Ident) {
      ++pos_;
      return Expr::name(t.text);
    }
    if (is_sym("(")) {
      ++pos_;
      Expr e = expr();
      expect(")");
      return e;
    }
    expected("an expression");
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string print_list(const std::vector<Expr>& es, const char* sep) {
  std::vector<std::string> parts;
  for (const auto& e : es) parts.push_back(print(e));
  return join(parts, sep);
}

std::string print_substs(const std::vector<Subst>& ss) {
  std::vector<std::string> parts;
  for (const auto& [n, e] : ss) parts.push_back(n + " -> " + print(e));
  return join(parts, ", ");
}

struct Printer {
  std::string operator()(const FieldDecl& f) const {
    std::string s = "field Q";
    if (!f.generators.empty()) s += "(" + join(f.generators, ", ") + ")";
    if (!f.sigma.empty()) s += " sigma " + print_substs(f.sigma) + " inv " + print_substs(f.inverse);
    return s;
  }
  std::string operator()(const VarietyDecl& v) const {
    std::string s = "variety " + v.name + " ambient " + join(v.ambient, ", ");
    if (!v.ideal.empty()) s += " ideal { " + print_list(v.ideal, "; ") + " }";
    return s;
  }
  std::string operator()(const MapDecl& m) const {
    return "map " + m.name + " : " + join(m.source, " * ") + " -> " + join(m.target, " * ") + " : (" +
           print_list(m.components, ", ") + ")";
  }
  std::string operator()(const SigmaDecl& s) const {
    return "sigmavariety " + s.name + " = (" + s.variety + ", " + s.map + ")";
  }
  std::string operator()(const TrivializationDecl& t) const {
    std::vector<std::string> parts;
    for (const auto& [k, v] : t.entries) parts.push_back(k + " = " + v);
    return "trivialization " + t.name + " { " + join(parts, "; ") + " }";
  }
  std::string operator()(const PointDecl& p) const {
    return "point " + p.name + " = (" + print_list(p.coords, ", ") + ")";
  }
  std::string operator()(const FunctionDecl& f) const {
    return "function " + f.name + " : " + f.variety + " : " + print(f.expr);
  }
  std::string operator()(const Command& c) const {
    std::string s = c.name;
    for (const auto& a : c.args) s += " " + a;
    for (const auto& [k, v] : c.flags) {
      s += " --" + k;
      if (v) s += " " + *v;
    }
    return s;
  }
};

} // namespace

std::optional<std::string> Command::flag(std::string_view key) const {
  for (const auto& [k, v] : flags)
    if (k == key) return v ? v : std::optional<std::string>("");
  return std::nullopt;
}

bool Command::has_flag(std::string_view key) const { return flag(key).has_value(); }

std::vector<std::string> Command::all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : flags)
    if (k == key && v) out.push_back(*v);
  return out;
}

Script parse(std::string_view text) { return Parser(text).script(); }

Expr parse_expr(std::string_view text) { return Parser(text).single_expr(); }

std::string print(const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Number:
  case Expr::Kind::Name:
    return e.text;
  case Expr::Kind::Neg:
    return "(-" + print(e.args[0]) + ")";
  case Expr::Kind::Pow:
    return "(" + print(e.args[0]) + "^" + e.text + ")";
  default:
    break;
  }
  const char* op = e.kind == Expr::Kind::Add ? " + " : e.kind == Expr::Kind::Sub ? " - " : e.kind == Expr::Kind::Mul ? " * " : " / ";
  return "(" + print(e.args[0]) + op + print(e.args[1]) + ")";
}

std::string print(const Statement& s) { return std::visit(Printer{}, s); }

std::string print(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) out += print(st) + "\n";
  return out;
}

} // namespace sdyn::dsl

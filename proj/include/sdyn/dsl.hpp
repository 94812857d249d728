#pragma once

// Session scripts: declarations of fields, varieties, maps, sigma-varieties,
// trivializations, points and functions, followed by commands. The grammar
// is documented in docs/dsl.md.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sdyn::dsl {

struct Expr {
  enum class Kind { Number, Name, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  std::string text;         // digits, a name, or the exponent of Pow
  std::vector<Expr> args;

  static Expr number(std::string digits) { return {Kind::Number, std::move(digits), {}}; }
  static Expr name(std::string n) { return {Kind::Name, std::move(n), {}}; }
  friend bool operator==(const Expr&, const Expr&) = default;
};

using Subst = std::pair<std::string, Expr>;

struct FieldDecl {
  std::vector<std::string> generators;
  std::vector<Subst> sigma, inverse;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct VarietyDecl {
  std::string name;
  std::vector<std::string> ambient;
  std::vector<Expr> ideal;
  friend bool operator==(const VarietyDecl&, const VarietyDecl&) = default;
};

struct MapDecl {
  std::string name;
  std::vector<std::string> source, target;  // factors of a product
  std::vector<Expr> components;
  friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct SigmaDecl {
  std::string name, variety, map;
  friend bool operator==(const SigmaDecl&, const SigmaDecl&) = default;
};

struct TrivializationDecl {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;  // S, Z, Y, g, f
  friend bool operator==(const TrivializationDecl&, const TrivializationDecl&) = default;
};

struct PointDecl {
  std::string name;
  std::vector<Expr> coords;
  friend bool operator==(const PointDecl&, const PointDecl&) = default;
};

struct FunctionDecl {
  std::string name, variety;
  Expr expr;
  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct Command {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::optional<std::string>>> flags;

  std::optional<std::string> flag(std::string_view key) const;
  bool has_flag(std::string_view key) const;
  std::vector<std::string> all(std::string_view key) const;
  friend bool operator==(const Command&, const Command&) = default;
};

using Statement = std::variant<FieldDecl, VarietyDecl, MapDecl, SigmaDecl, TrivializationDecl, PointDecl,
                               FunctionDecl, Command>;

struct Script {
  std::vector<Statement> statements;
  std::vector<int> lines;  // source line of each statement
  friend bool operator==(const Script& a, const Script& b) { return a.statements == b.statements; }
};

// Throws Error(SyntaxError) with "line L, column C: ..." on the first error.
Script parse(std::string_view text);
Expr parse_expr(std::string_view text);

// Canonical text: one statement per line, expressions fully parenthesized.
std::string print(const Script& s);
std::string print(const Statement& s);
std::string print(const Expr& e);

} // namespace sdyn::dsl

#pragma once

// Resolution of a parsed script into library objects, command dispatch and
// reports.

#include "sdyn/dsl.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/errors.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace sdyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "sigma-dyn/1";

struct SessionOptions {
  Limits limits;
  MonomialOrder order = MonomialOrder::grevlex();  // used when printing ideal bases
};

// Exit statuses, worst first: 4 input error, 3 budget or incomplete,
// 2 a check failed, 0 success.
enum Status { kOk = 0, kCheckFailed = 2, kIncomplete = 3, kInputError = 4 };
int worse(int a, int b);
int status_for(ErrorKind kind);

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  std::vector<Certificate> certificates;
  Json flags = Json::object();
  int status = kOk;
  std::string error;
  double elapsed_ms = 0;

  Json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

class Session {
public:
  Session(const dsl::Script& script, SessionOptions options = {});

  Report run(const dsl::Command& cmd) const;
  std::vector<Report> run_all() const;

  const DifferenceField& field() const { return field_; }
  const AffineVariety& variety(const std::string& name) const;
  const RationalMap& map(const std::string& name) const;
  const SigmaVariety& sigma(const std::string& name) const;
  const Trivialization& trivialization(const std::string& name) const;
  const Point& point(const std::string& name) const;
  const RatFunc& function(const std::string& name) const;

private:
  void declare(const dsl::Statement& st);
  void claim(const std::string& name);
  AffineVariety product(const std::vector<std::string>& factors) const;
  RatFunc eval(const dsl::Expr& e, const Vars& vars) const;
  Point eval_point(const std::vector<dsl::Expr>& coords) const;

  SessionOptions options_;
  DifferenceField field_;
  bool field_declared_ = false;
  bool others_declared_ = false;
  std::set<std::string> names_;
  std::map<std::string, AffineVariety> varieties_;
  std::map<std::string, RationalMap> maps_;
  std::map<std::string, SigmaVariety> sigmas_;
  std::map<std::string, Trivialization> trivs_;
  std::map<std::string, Point> points_;
  std::map<std::string, RatFunc> functions_;
  std::vector<dsl::Command> commands_;

  friend class CommandRunner;
};

struct RunResult {
  std::vector<Report> reports;
  int exit_code = kOk;
  std::string error;  // parse or declaration error
};

RunResult run_script(std::string_view text, const SessionOptions& options = {});

} // namespace sdyn

#include "sdyn/session.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"sigma-dyn: exact computations on rational sigma-varieties"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run a session script");
  std::string script;
  bool json = false;
  std::size_t budget = sdyn::Limits{}.max_pair_reductions;
  std::string order = "grevlex";
  run->add_option("SCRIPT", script, "session script")->required();
  run->add_flag("--json", json, "print reports as JSON");
  run->add_option("--budget", budget, "pair reductions allowed per Groebner basis")->check(CLI::PositiveNumber);
  run->add_option("--order", order, "monomial order for printed ideals")->check(CLI::IsMember({"grevlex", "lex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : sdyn::kInputError;
  }

  std::ifstream in(script);
  if (!in) {
    std::cerr << "sigma-dyn: cannot read " << script << "\n";
    return sdyn::kInputError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  sdyn::SessionOptions options;
  options.limits.max_pair_reductions = budget;
  options.order = order == "lex" ? sdyn::MonomialOrder::lex() : sdyn::MonomialOrder::grevlex();

  sdyn::RunResult r = sdyn::run_script(buf.str(), options);
  if (!r.error.empty()) {
    if (json) {
      sdyn::Json err{{"schema", sdyn::kReportSchema}, {"error", r.error}, {"status", r.exit_code}};
      std::cout << err.dump(2) << "\n";
    }
    std::cerr << "sigma-dyn: " << r.error << "\n";
    return r.exit_code;
  }
  if (json) {
    sdyn::Json all = sdyn::Json::array();
    for (const auto& rep : r.reports) all.push_back(rep.to_json());
    std::cout << all.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < r.reports.size(); ++i) std::cout << (i ? "\n" : "") << r.reports[i].to_text();
  }
  return r.exit_code;
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wres {

// A fully parsed command-line request, independent of the option syntax.
struct Request {
  std::string command;  // invariant|center|blowup|principalize|resolve|verify|help
  std::vector<std::string> var_names;
  std::vector<std::string> ideal_texts;
  std::string json_path;
  std::string dot_path;
  int max_rounds = 10;
  std::string transform = "controlled";       // or "proper"
  std::vector<std::string> at_texts;          // raw "x=1,y=-1/2" assignments
  bool trace = false;
  long max_theta_steps = 10000;               // WRES_MAX_THETA_STEPS overrides
  std::string help_text;                      // set when command == "help"
};

// Maps option syntax to a Request; malformed invocations raise ParseError.
// The environment variable WRES_MAX_THETA_STEPS, when set, overrides the
// scaling-step budget.
Request parse_request(const std::vector<std::string>& args);

// Executes a request, writing human-readable results to `out` and error
// text to `err`.  Returns the process exit code (0 success, 3 failed
// verification); library errors propagate to the caller.
int run(const Request& req, std::ostream& out, std::ostream& err);

// parse + run + exit-code mapping: 1 malformed input text, 2 structural or
// contract or input errors, 3 diagnostics and failed verification,
// 4 exhausted resource budgets.
int cli_main(int argc, char** argv);

}  // namespace wres

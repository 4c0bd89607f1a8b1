// cli.hpp
// Command-line front end shared by the torus-green executable and the tests.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "torus_green/errors.hpp"
#include "torus_green/report.hpp"

namespace tg {

enum ExitCode : int { kExitOk = 0, kExitDomain = 2, kExitConsistency = 3, kExitUsage = 64 };

int exit_code_for(ErrorCode code);

/// Parses "a+bi", "a-bi", "bi", "a", "i", "-i" with optional scientific
/// notation. Throws Error(InvalidArgument).
cplx parse_complex(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<cplx> tau;
  std::optional<cplx> z;
  std::optional<double> b;
  std::optional<double> tol;
  int nx = 40, ny = 40;
  Region region;
  std::string format = "json";
  std::string out;
  double exclusion_radius = 0.05;
  double lambda = 0.0;
  std::string rho = "8pi";
};

json to_json(const RunConfig& c);
/// Rejects unknown keys and wrongly typed values with Error(InvalidArgument).
RunConfig run_config_from_json(const json& j);

/// Executes one configured command; the report goes to `out`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tg

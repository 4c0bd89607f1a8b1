// selftest.hpp
// Quick invariant checks across all modules, used by `torus-green selftest`.

#pragma once

#include "torus_green/report.hpp"

namespace tg {

struct SelftestReport {
  json checks = json::array();  ///< {name, value, tol, pass}
  int failures = 0;
};

SelftestReport run_selftest();

}  // namespace tg

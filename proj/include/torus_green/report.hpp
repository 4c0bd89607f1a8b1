// report.hpp
// Machine-readable output: canonical JSON (sorted keys, doubles printed with
// 17 significant digits) and CSV for scans.

#pragma once

#include <string>

#include "json.hpp"
#include "torus_green/critical.hpp"
#include "torus_green/mfe.hpp"
#include "torus_green/moduli.hpp"

namespace tg {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Serialises with sorted keys, two-space indentation and "%.17g" numbers;
/// non-finite doubles become null. Ends with a newline.
std::string canonical_json(const json& j);

/// "%.17g" formatting used everywhere a double is printed.
std::string format_double(double x);

json to_json(cplx z);
json to_json(const LatticeCoords& c);
json to_json(const Hessian2& h);
json to_json(const EllipticInvariants& v);
json to_json(const CriticalPoint& p);
json to_json(const CriticalSet& s);
json to_json(const HalfPeriodComparison& c);
json to_json(const ThresholdReport& r);
json to_json(const InequalityReport& r);
json to_json(const ScanResult& r);
json to_json(const VerifyReport& r);

/// Header re_tau,im_tau,count,extra_t,extra_s; empty extra fields when the
/// cell has no extra pair.
std::string scan_csv(const ScanResult& r);

}  // namespace tg

// report.cpp

#include "torus_green/report.hpp"

#include <cmath>
#include <cstdio>

namespace tg {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(const json& j, std::string& out, int indent) {
  const std::string pad(size_t(indent) * 2, ' ');
  const std::string inner(size_t(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_json(const json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const LatticeCoords& c) { return json{{"t", c.t}, {"s", c.s}}; }

json to_json(const Hessian2& h) { return json{{"xx", h.xx}, {"xy", h.xy}, {"yy", h.yy}, {"det", h.det}}; }

json to_json(const EllipticInvariants& v) {
  return json{{"e1", to_json(v.e1)},     {"e2", to_json(v.e2)}, {"e3", to_json(v.e3)},
              {"eta1", to_json(v.eta1)}, {"eta2", to_json(v.eta2)}, {"g2", to_json(v.g2)},
              {"g3", to_json(v.g3)},     {"lambda", to_json(v.lambda)}};
}

json to_json(const CriticalPoint& p) {
  return json{{"coords", to_json(p.coords)},       {"z", to_json(p.z)},        {"kind", to_string(p.kind)},
              {"morse", to_string(p.morse)},       {"hessian", to_json(p.hessian)}, {"g_rel", p.g_rel},
              {"grad_norm", p.grad_norm}};
}

json to_json(const CriticalSet& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  return json{{"points", pts},
              {"total_count", s.total_count},
              {"seeds", s.seeds},
              {"failed_seeds", s.failed_seeds},
              {"verified_fine", s.verified_fine}};
}

json to_json(const HalfPeriodComparison& c) {
  static const char* names[3] = {"1_2", "1_3", "2_3"};
  static const char* orders[3] = {"less", "tie", "greater"};
  json pairs = json::object();
  for (int p = 0; p < 3; ++p) {
    pairs[names[p]] = json{{"direct", c.direct[p]},
                           {"log_ratio", c.log_ratio[p]},
                           {"log_abs_wp_ratio", c.abs_wp_log[p]},
                           {"order", orders[int(c.order[p])]}};
  }
  return json{{"g_rel", c.g_rel}, {"pairs", pairs}, {"max_formula_gap", c.max_formula_gap},
              {"tie_tol", c.tie_tol}, {"consistent", c.consistent}};
}

json to_json(const ThresholdReport& r) {
  return json{{"b0", r.b0},
              {"b1", r.b1},
              {"residual_b0", r.residual_b0},
              {"residual_b1", r.residual_b1},
              {"bracket_width", r.bracket_width},
              {"e2_over_e1_abs_sq_at_b1", r.e2_over_e1_sq_at_b1},
              {"tol", r.tol}};
}

json to_json(const InequalityReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows) {
    rows.push_back(json{{"b", x.b},
                        {"log_theta2_bb", x.theta2_bb},
                        {"d_e1_plus_eta1_db", x.de1eta1_db},
                        {"log_theta3_b", x.theta3_b},
                        {"log_theta3_bb", x.theta3_bb},
                        {"half_e1_minus_eta1", x.half_e1_minus_eta1},
                        {"bridge1_gap", x.bridge1_gap},
                        {"bridge2_gap", x.bridge2_gap},
                        {"gxx_half", x.gxx},
                        {"gyy_half", x.gyy}});
  }
  json viol = json::array();
  for (const auto& v : r.violations) viol.push_back(json{{"b", v.b}, {"what", v.what}});
  return json{{"rows", rows}, {"violations", viol}, {"bridge1_tol", r.bridge1_tol}, {"bridge2_tol", r.bridge2_tol}};
}

json to_json(const ScanResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell{{"tau", to_json(c.tau)}, {"count", c.count}};
    cell["extra_point"] = c.extra_point ? to_json(*c.extra_point) : json(nullptr);
    if (c.min_half_period) cell["min_half_period"] = c.min_half_period;
    if (!c.error.empty()) cell["error"] = c.error;
    cells.push_back(cell);
  }
  json flips = json::array();
  for (const auto& f : r.flips) {
    flips.push_back(json{{"midpoint", to_json(f.midpoint)},
                         {"count_a", f.count_a},
                         {"count_b", f.count_b},
                         {"degenerating_half_period", f.degenerating_half_period}});
  }
  return json{{"region", json{{"re0", r.region.re0}, {"im0", r.region.im0}, {"re1", r.region.re1}, {"im1", r.region.im1}}},
              {"nx", r.nx},
              {"ny", r.ny},
              {"cells", cells},
              {"count_flips", flips},
              {"tol", r.tol}};
}

json to_json(const VerifyReport& r) {
  return json{{"grid_n", r.grid_n},
              {"exclusion_radius", r.exclusion_radius},
              {"stencil_h", r.h},
              {"points", r.points},
              {"max_residual", r.max_residual},
              {"mean_residual", r.mean_residual},
              {"periodicity_dev_1", r.periodicity_dev_1},
              {"periodicity_dev_tau", r.periodicity_dev_tau}};
}

std::string scan_csv(const ScanResult& r) {
  std::string out = "re_tau,im_tau,count,extra_t,extra_s\n";
  for (const auto& c : r.cells) {
    out += format_double(c.tau.real()) + "," + format_double(c.tau.imag()) + "," + std::to_string(c.count) + ",";
    if (c.extra_point) out += format_double(c.extra_point->t) + "," + format_double(c.extra_point->s);
    else out += ",";
    out += "\n";
  }
  return out;
}

}  // namespace tg

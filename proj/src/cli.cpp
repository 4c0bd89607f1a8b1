// cli.cpp

#include "torus_green/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "torus_green/selftest.hpp"

namespace tg {

int exit_code_for(ErrorCode code) {
  if (is_consistency_violation(code)) return kExitConsistency;
  if (code == ErrorCode::InvalidArgument) return kExitUsage;
  return kExitDomain;
}

cplx parse_complex(const std::string& text) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^\\s*([+-]?" + num + ")\\s*$");
  static const std::regex imag_only("^\\s*([+-]?)(" + num + ")?\\s*\\*?\\s*[ij]\\s*$");
  static const std::regex both("^\\s*([+-]?" + num + ")\\s*([+-])\\s*(" + num + ")?\\s*\\*?\\s*[ij]\\s*$");
  std::smatch m;
  auto mag = [](const std::ssub_match& s) { return s.matched ? std::stod(s.str()) : 1.0; };
  if (std::regex_match(text, m, real_only)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(text, m, imag_only)) return {0.0, (m[1].str() == "-" ? -1.0 : 1.0) * mag(m[2])};
  if (std::regex_match(text, m, both)) return {std::stod(m[1].str()), (m[2].str() == "-" ? -1.0 : 1.0) * mag(m[3])};
  throw Error(ErrorCode::InvalidArgument, "cannot parse complex number '" + text + "'");
}

namespace {

using std::numbers::pi;

std::pair<int, int> parse_grid(const std::string& text) {
  std::smatch m;
  static const std::regex two(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  static const std::regex one(R"(^\s*(\d+)\s*$)");
  if (std::regex_match(text, m, two)) return {std::stoi(m[1].str()), std::stoi(m[2].str())};
  if (std::regex_match(text, m, one)) return {std::stoi(m[1].str()), std::stoi(m[1].str())};
  throw Error(ErrorCode::InvalidArgument, "grid must look like NXxNY");
}

Region parse_region(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  std::vector<double> v;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "region entries must be numbers");
    }
  }
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "region must be re0,im0,re1,im1");
  return {v[0], v[1], v[2], v[3]};
}

const cplx& need_tau(const RunConfig& cfg) {
  if (!cfg.tau) throw Error(ErrorCode::InvalidArgument, "--tau is required for '" + cfg.command + "'");
  return *cfg.tau;
}

json lc_json(const LogComplex& w) { return json{{"log_mag", w.log_mag}, {"arg", w.arg}}; }

json cmd_eval(const RunConfig& cfg, json& diag) {
  const Torus torus = make_torus(need_tau(cfg));
  const GreenFunction g(torus);
  const ThetaSpecials& sp = g.weierstrass().specials();
  const ReducedModulus red = reduce_modulus(torus.tau);
  const GreenConstant C = green_constant(torus);
  json res{{"torus", json{{"tau", to_json(torus.tau)}, {"b", torus.b}, {"area", torus.area}}},
           {"reduced_modulus",
            json{{"tau", to_json(red.tau)},
                 {"transform", json::array({red.transform.a, red.transform.b, red.transform.c, red.transform.d})}}},
           {"invariants", to_json(g.inv())},
           {"theta_specials", json{{"theta2_0", to_json(sp.th2_0)},
                                   {"theta3_0", to_json(sp.th3_0)},
                                   {"theta4_0", to_json(sp.th4_0)},
                                   {"theta1p_0", to_json(sp.th1p_0)},
                                   {"theta1ppp_0", to_json(sp.th1ppp_0)}}},
           {"green_constant", C.value},
           {"lambda_circle_residual", lambda_circle_residual(torus.tau)}};
  diag["green_constant_error_estimate"] = C.error_estimate;
  if (cfg.z) {
    const cplx z = *cfg.z;
    const Weierstrass::Jet j = g.weierstrass().jet(z);
    const GreenEval e = g.eval(z);
    res["point"] = json{{"z", to_json(z)},
                        {"coords", to_json(wrap_point(z, torus))},
                        {"theta1", lc_json(theta1(z, torus))},
                        {"sigma", lc_json(g.weierstrass().sigma(z))},
                        {"zeta", to_json(j.zeta)},
                        {"wp", to_json(j.wp)},
                        {"wp1", to_json(j.wp1)},
                        {"wp2", to_json(j.wp2)},
                        {"green_rel", e.value_rel},
                        {"green", e.value_rel + C.value},
                        {"grad", e.grad},
                        {"hessian", to_json(e.hessian)}};
  }
  return res;
}

json cmd_critical(const RunConfig& cfg, json& diag) {
  const Torus torus = make_torus(need_tau(cfg));
  CriticalOptions opt;
  opt.tol = cfg.tol.value_or(1e-11);
  opt.exclusion_radius = cfg.exclusion_radius;
  const CriticalSet set = find_critical_points(torus, opt);
  const HalfPeriodComparison cmp = compare_half_periods(torus);
  diag["tol"] = opt.tol;
  diag["dedup_tol"] = opt.dedup_tol;
  diag["degeneracy_eps"] = opt.degeneracy_eps;
  diag["exclusion_radius"] = opt.exclusion_radius;
  diag["seed_grid"] = opt.grid;
  diag["verify_grid"] = opt.verify_grid;
  return json{{"critical_set", to_json(set)}, {"count", set.total_count}, {"comparison", to_json(cmp)}};
}

json cmd_thresholds(const RunConfig& cfg, json& diag) {
  const ThresholdReport r = thresholds(cfg.tol.value_or(1e-12));
  diag["bracket"] = json::array({0.05, 2.0});
  return to_json(r);
}

std::vector<double> default_b_grid(double lo, double hi) {
  std::vector<double> g;
  for (int k = 0; lo + 0.05 * k <= hi + 1e-12; ++k) g.push_back(lo + 0.05 * k);
  return g;
}

json cmd_inequalities(const RunConfig& cfg, json& diag, bool& violated) {
  const std::vector<double> grid = cfg.b ? std::vector<double>{*cfg.b} : default_b_grid(0.1, 3.0);
  const InequalityReport rep = verify_fundamental_inequalities(grid);
  violated = !rep.violations.empty();
  json fe = json::array();
  double worst = 0.0;
  for (double b : cfg.b ? std::vector<double>{*cfg.b} : default_b_grid(0.1, 2.0)) {
    const double r = functional_equation_residual(b);
    worst = std::max(worst, r);
    fe.push_back(json{{"b", b}, {"residual", r}});
  }
  diag["finite_difference_step_relative"] = 1e-3;
  return json{{"inequalities", to_json(rep)},
              {"functional_equation", json{{"rows", fe}, {"max_residual", worst}, {"f_half", f_of_b(0.5)}}}};
}

json cmd_mfe(const RunConfig& cfg, json& diag) {
  const Torus torus = make_torus(need_tau(cfg));
  MfeSolution sol;
  json res;
  if (cfg.rho == "8pi") {
    sol = cfg.z ? solution_8pi(torus, *cfg.z, cfg.lambda) : solution_8pi(torus, cfg.lambda);
    const auto& m = static_cast<const DevelopingMap8pi&>(*sol.map);
    res["branch"] = to_json(*sol.branch);
    res["multiplier_exponents"] = json::array({to_json(m.multiplier_exponent(1)), to_json(m.multiplier_exponent(2))});
  } else if (cfg.rho == "4pi") {
    sol = solution_4pi(torus);
    const auto& m = static_cast<const DevelopingMap4pi&>(*sol.map);
    res["c_prime"] = to_json(m.c_prime());
    res["c_tau"] = to_json(m.c_tau(0.0));
    res["g_period_integral"] = to_json(m.g_period_integral());
  } else {
    throw Error(ErrorCode::InvalidArgument, "--rho must be 4pi or 8pi");
  }
  res["rho"] = sol.rho;
  res["lambda"] = sol.lambda;
  res["c1"] = sol.c1;
  res["verification"] = to_json(verify_solution(sol, cfg.nx, cfg.exclusion_radius));
  res["mass"] = mass(sol);
  diag["mass_rule"] = "periodic trapezoid 256x256";
  diag["laplacian_stencil"] = "fourth-order cross, h = 1e-3";
  return res;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
  f << text;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j{{"command", c.command},
         {"grid", json::array({c.nx, c.ny})},
         {"region", json::array({c.region.re0, c.region.im0, c.region.re1, c.region.im1})},
         {"format", c.format},
         {"out", c.out},
         {"exclusion_radius", c.exclusion_radius},
         {"lambda", c.lambda},
         {"rho", c.rho}};
  j["tau"] = c.tau ? to_json(*c.tau) : json(nullptr);
  j["z"] = c.z ? to_json(*c.z) : json(nullptr);
  j["b"] = c.b ? json(*c.b) : json(nullptr);
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  return j;
}

RunConfig run_config_from_json(const json& j) {
  static const std::set<std::string> known = {"command", "grid", "region", "format", "out", "exclusion_radius",
                                              "lambda",  "rho",  "tau",    "z",      "b",   "tol"};
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "run config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw Error(ErrorCode::InvalidArgument, "unknown run config field '" + it.key() + "'");
  }
  RunConfig c;
  try {
    auto cplx_of = [](const json& v) -> std::optional<cplx> {
      if (v.is_null()) return std::nullopt;
      if (v.size() != 2 || !v.contains("re") || !v.contains("im")) throw std::invalid_argument("complex needs re, im");
      return cplx(v.at("re").get<double>(), v.at("im").get<double>());
    };
    auto real_of = [](const json& v) -> std::optional<double> {
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    c.command = j.at("command").get<std::string>();
    if (j.contains("grid")) {
      const auto g = j.at("grid").get<std::vector<int>>();
      if (g.size() != 2) throw std::invalid_argument("grid needs two entries");
      c.nx = g[0];
      c.ny = g[1];
    }
    if (j.contains("region")) {
      const auto r = j.at("region").get<std::vector<double>>();
      if (r.size() != 4) throw std::invalid_argument("region needs four entries");
      c.region = {r[0], r[1], r[2], r[3]};
    }
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("exclusion_radius")) c.exclusion_radius = j.at("exclusion_radius").get<double>();
    if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
    if (j.contains("rho")) c.rho = j.at("rho").get<std::string>();
    if (j.contains("tau")) c.tau = cplx_of(j.at("tau"));
    if (j.contains("z")) c.z = cplx_of(j.at("z"));
    if (j.contains("b")) c.b = real_of(j.at("b"));
    if (j.contains("tol")) c.tol = real_of(j.at("tol"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed run config: ") + e.what());
  }
  return c;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "csv") throw Error(ErrorCode::InvalidArgument, "--format must be json or csv");
    if (cfg.format == "csv" && cfg.command != "scan") {
      throw Error(ErrorCode::InvalidArgument, "csv output is only available for scan");
    }
    json diag = json::object();
    json results;
    int status = kExitOk;
    if (cfg.command == "eval") {
      results = cmd_eval(cfg, diag);
    } else if (cfg.command == "critical") {
      results = cmd_critical(cfg, diag);
    } else if (cfg.command == "scan") {
      const double tol = cfg.tol.value_or(1e-11);
      const ScanResult r = scan(cfg.region, cfg.nx, cfg.ny, tol);
      if (cfg.format == "csv") {
        emit(cfg, scan_csv(r), out);
        return kExitOk;
      }
      results = to_json(r);
      diag["tol"] = tol;
      int failed = 0;
      for (const auto& c : r.cells) failed += c.count == 0;
      diag["failed_cells"] = failed;
    } else if (cfg.command == "thresholds") {
      results = cmd_thresholds(cfg, diag);
    } else if (cfg.command == "inequalities") {
      bool violated = false;
      results = cmd_inequalities(cfg, diag, violated);
      if (violated) status = kExitConsistency;
    } else if (cfg.command == "mfe") {
      results = cmd_mfe(cfg, diag);
    } else if (cfg.command == "selftest") {
      const SelftestReport st = run_selftest();
      results = st.checks;
      diag["failures"] = st.failures;
      if (st.failures) status = kExitConsistency;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
    }
    const json doc{{"schema_version", kSchemaVersion},
                   {"command", cfg.command},
                   {"inputs", to_json(cfg)},
                   {"results", results},
                   {"diagnostics", diag}};
    emit(cfg, canonical_json(doc), out);
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green functions on flat tori: critical points, moduli scans and mean field equation solutions",
               "torus-green"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "Run a JSON RunConfig instead of command-line flags");

  RunConfig cfg;
  std::string tau, z, grid, region;

  auto add_tau = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--tau", tau, "Modulus a+bi");
    if (required) o->required();
  };
  auto add_tol = [&](CLI::App* s) { s->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber); };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", cfg.out, "Write the report to this file");
  };

  auto* eval = app.add_subcommand("eval", "Special values, invariants and G at one point");
  add_tau(eval, true);
  eval->add_option("--z", z, "Point z as a+bi");
  add_format(eval);

  auto* critical = app.add_subcommand("critical", "All critical points of G");
  add_tau(critical, true);
  add_tol(critical);
  critical->add_option("--exclusion-radius", cfg.exclusion_radius, "Seed exclusion radius around 0");
  add_format(critical);

  auto* scan_cmd = app.add_subcommand("scan", "Count critical points over a grid of moduli");
  scan_cmd->add_option("--region", region, "re0,im0,re1,im1");
  scan_cmd->add_option("--grid", grid, "NXxNY");
  add_tol(scan_cmd);
  add_format(scan_cmd);

  auto* thr = app.add_subcommand("thresholds", "Degeneracy thresholds b0, b1 on Re tau = 1/2");
  add_tol(thr);
  add_format(thr);

  auto* ineq = app.add_subcommand("inequalities", "Monotonicity inequalities and functional equation");
  ineq->add_option("--b", cfg.b, "Single b instead of the default grid")->check(CLI::PositiveNumber);
  add_format(ineq);

  auto* mfe = app.add_subcommand("mfe", "Construct and verify a mean field equation solution");
  add_tau(mfe, true);
  mfe->add_option("--rho", cfg.rho, "4pi or 8pi")->check(CLI::IsMember({"4pi", "8pi"}));
  mfe->add_option("--lambda", cfg.lambda, "Scaling parameter (8pi)");
  mfe->add_option("--z", z, "Branch point z0 (8pi); default: the extra critical point of G");
  mfe->add_option("--grid", grid, "Verification grid N or NxN");
  mfe->add_option("--exclusion-radius", cfg.exclusion_radius, "Radius excluded around lattice points");
  add_format(mfe);

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");
  add_format(self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + config_path);
      json j;
      try {
        f >> j;
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
      }
      return execute(run_config_from_json(j), out, err);
    }
    if (app.get_subcommands().empty()) {
      err << "error: a subcommand is required\n" << app.help();
      return kExitUsage;
    }
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!tau.empty()) cfg.tau = parse_complex(tau);
    if (!z.empty()) cfg.z = parse_complex(z);
    if (cfg.command == "mfe") cfg.nx = cfg.ny = 64;
    if (!grid.empty()) std::tie(cfg.nx, cfg.ny) = parse_grid(grid);
    if (!region.empty()) cfg.region = parse_region(region);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (exit_code_for(e.code()) == kExitUsage) err << app.help();
    return exit_code_for(e.code());
  }
  return execute(cfg, out, err);
}

}  // namespace tg

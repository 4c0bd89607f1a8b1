// critical.cpp

#include "torus_green/critical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "torus_green/errors.hpp"

namespace tg {

namespace {

using std::numbers::pi;

double norm2(const std::array<double, 2>& g) { return std::hypot(g[0], g[1]); }

// Max-norm distance in lattice coordinates between z1 and z2 modulo the lattice.
double coord_distance(cplx z1, cplx z2, const Torus& torus) {
  const LatticeCoords c = wrap_point(z1 - z2, torus);
  return std::max(std::abs(c.t), std::abs(c.s));
}

double pair_distance(cplx z1, cplx z2, const Torus& torus) {
  return std::min(coord_distance(z1, z2, torus), coord_distance(z1, -z2, torus));
}

LatticeCoords pair_representative(cplx z, const Torus& torus) {
  constexpr double flat = 1e-13;
  auto upper = [](const LatticeCoords& c) { return c.s > flat || (std::abs(c.s) <= flat && c.t > 0.0); };
  LatticeCoords c = wrap_point(z, torus);
  if (!upper(c)) {
    const LatticeCoords m = wrap_point(-z, torus);
    if (upper(m)) c = m;
  }
  if (std::abs(c.s) <= flat) c.s = 0.0;
  return c;
}

CriticalPoint make_point(const GreenFunction& g, cplx z, PointKind kind, double eps) {
  CriticalPoint p;
  p.coords = kind == PointKind::ExtraPair ? pair_representative(z, g.torus()) : wrap_point(z, g.torus());
  p.z = from_lattice(p.coords, g.torus());
  p.kind = kind;
  const GreenEval e = g.eval(p.z);
  p.hessian = e.hessian;
  p.g_rel = e.value_rel;
  p.grad_norm = norm2(e.grad);
  p.morse = classify(p.hessian, g.torus().b, eps);
  return p;
}

struct Sweep {
  std::vector<cplx> extras;  // pair representatives, sorted
  int seeds = 0;
  int failed = 0;
  int flat = 0;  // converged where the Hessian is singular to rounding level
};

bool numerically_flat(const Hessian2& h) {
  const double mean = 0.5 * (h.xx + h.yy);
  const double rad = std::hypot(0.5 * (h.xx - h.yy), h.xy);
  const double big = std::abs(mean) + rad;
  const double small = std::min(std::abs(mean + rad), std::abs(mean - rad));
  return small < 1e-9 * big;
}

Sweep sweep(const GreenFunction& g, const CriticalOptions& opt, int n) {
  const Torus& torus = g.torus();
  const auto hp = half_periods(torus);
  std::vector<cplx> roots;
  Sweep out;
  // z and -z give mirrored Newton paths, so only seeds with s > 0 are needed.
  for (int j = n / 2; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double t = -0.5 + (i + 0.5) / n, s = -0.5 + (j + 0.5) / n;
      const cplx z0 = t + s * torus.tau;
      if (distance_to_lattice(z0, torus) < opt.exclusion_radius) continue;
      ++out.seeds;
      const auto r = refine_critical_point(g, z0, opt.tol, opt.max_iter);
      if (!r) {
        ++out.failed;
        continue;
      }
      bool is_half = false;
      for (const cplx h : hp) is_half = is_half || coord_distance(*r, h, torus) < opt.dedup_tol;
      if (is_half) continue;
      if (numerically_flat(g.eval(*r).hessian)) {
        ++out.flat;
        continue;
      }
      roots.push_back(*r);
    }
  }
  std::vector<LatticeCoords> reps;
  for (const cplx r : roots) reps.push_back(pair_representative(r, torus));
  std::sort(reps.begin(), reps.end(), [](const LatticeCoords& a, const LatticeCoords& b) {
    return a.t != b.t ? a.t < b.t : a.s < b.s;
  });
  for (const auto& c : reps) {
    const cplx z = from_lattice(c, torus);
    bool seen = false;
    for (const cplx e : out.extras) seen = seen || pair_distance(z, e, torus) < opt.dedup_tol;
    if (!seen) out.extras.push_back(z);
  }
  return out;
}

bool morse_balanced(const std::vector<CriticalPoint>& pts) {
  int index_sum = 1;  // the pole of G counts as a maximum
  for (const auto& p : pts) {
    const int mult = p.kind == PointKind::ExtraPair ? 2 : 1;
    if (p.morse == MorseClass::Degenerate) return false;
    index_sum += mult * (p.morse == MorseClass::Min ? 1 : -1);
  }
  return index_sum == 0;
}

CriticalSet assemble(const GreenFunction& g, const std::vector<cplx>& extras, const CriticalOptions& opt) {
  CriticalSet set;
  const auto hp = half_periods(g.torus());
  const PointKind kinds[3] = {PointKind::HalfPeriod1, PointKind::HalfPeriod2, PointKind::HalfPeriod3};
  for (int k = 0; k < 3; ++k) set.points.push_back(make_point(g, hp[k], kinds[k], opt.degeneracy_eps));
  for (const cplx z : extras) set.points.push_back(make_point(g, z, PointKind::ExtraPair, opt.degeneracy_eps));
  set.total_count = 3 + 2 * int(extras.size());
  if (set.total_count > 5) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d critical points at tau = %.17g%+.17gi", set.total_count, g.torus().tau.real(),
                  g.torus().tau.imag());
    throw Error(ErrorCode::CountViolation, buf);
  }
  return set;
}

}  // namespace

const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::HalfPeriod1: return "half_period_1";
    case PointKind::HalfPeriod2: return "half_period_2";
    case PointKind::HalfPeriod3: return "half_period_3";
    case PointKind::ExtraPair: return "extra_pair";
  }
  return "unknown";
}

const char* to_string(MorseClass m) {
  switch (m) {
    case MorseClass::Min: return "min";
    case MorseClass::Saddle: return "saddle";
    case MorseClass::Degenerate: return "degenerate";
  }
  return "unknown";
}

MorseClass classify(const Hessian2& h, double b, double degeneracy_eps) {
  const double eps = degeneracy_eps / (b * b);
  if (h.det > eps && h.xx > 0.0) return MorseClass::Min;
  if (h.det < -eps) return MorseClass::Saddle;
  return MorseClass::Degenerate;
}

MorseClass classify(const CriticalPoint& p, double b, double degeneracy_eps) {
  return classify(p.hessian, b, degeneracy_eps);
}

std::optional<cplx> refine_critical_point(const GreenFunction& g, cplx z0, double tol, int max_iter) {
  const Torus& torus = g.torus();
  const double max_step = 0.25 * std::min(1.0, torus.b);
  cplx z = from_lattice(wrap_point(z0, torus), torus);
  GreenEval e;
  try {
    e = g.eval(z);
  } catch (const Error&) {
    return std::nullopt;
  }
  double res = norm2(e.grad);
  double last_full_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    const Hessian2& h = e.hessian;
    if (h.det == 0.0 || !std::isfinite(h.det)) break;
    cplx step{-(h.yy * e.grad[0] - h.xy * e.grad[1]) / h.det, -(-h.xy * e.grad[0] + h.xx * e.grad[1]) / h.det};
    last_full_step = std::abs(step);
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    bool improved = false;
    for (int halving = 0; halving <= 20; ++halving, step *= 0.5) {
      const cplx trial = z + step;
      if (distance_to_lattice(trial, torus) < 1e-6 * std::min(1.0, torus.b)) continue;
      const GreenEval et = g.eval(trial);
      const double rt = norm2(et.grad);
      if (rt < res) {
        z = trial;
        e = et;
        res = rt;
        improved = true;
        break;
      }
    }
    if (!improved || std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) break;
  }
  // A tiny gradient alone is not enough: on long thin tori G is flat to
  // rounding level along the long direction.
  if (!(res < tol) || !(last_full_step < 1e-7 * std::min(1.0, torus.b))) return std::nullopt;
  return from_lattice(wrap_point(z, torus), torus);
}

CriticalSet find_critical_points(const Torus& torus, const CriticalOptions& opt) {
  if (!(opt.tol >= 1e-14 && opt.tol <= 1e-6)) {
    throw Error(ErrorCode::InvalidArgument, "critical-point tolerance must lie in [1e-14, 1e-6]");
  }
  const GreenFunction g(torus);
  const Sweep coarse = sweep(g, opt, opt.grid);
  if (coarse.flat > 0) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "G is flat to rounding level at %d Newton limits for tau = %.17g%+.17gi; the torus is too elongated",
                  coarse.flat, torus.tau.real(), torus.tau.imag());
    throw Error(ErrorCode::NoConvergence, buf);
  }
  CriticalSet set = assemble(g, coarse.extras, opt);
  set.seeds = coarse.seeds;
  set.failed_seeds = coarse.failed;
  if (coarse.failed == 0 && morse_balanced(set.points)) return set;

  const Sweep fine = sweep(g, opt, opt.verify_grid);
  if (fine.extras.size() == coarse.extras.size()) {
    set.verified_fine = true;
    return set;
  }
  if (coarse.failed > 0 || fine.failed > 0) {
    throw Error(ErrorCode::NoConvergence, "seed grids disagree on the number of critical points");
  }
  std::vector<cplx> merged = coarse.extras;
  for (const cplx z : fine.extras) {
    bool seen = false;
    for (const cplx e : merged) seen = seen || pair_distance(z, e, torus) < opt.dedup_tol;
    if (!seen) merged.push_back(z);
  }
  CriticalSet out = assemble(g, merged, opt);
  out.seeds = coarse.seeds + fine.seeds;
  out.verified_fine = true;
  return out;
}

CriticalSet find_critical_points(const Torus& torus, double tol) {
  CriticalOptions opt;
  opt.tol = tol;
  return find_critical_points(torus, opt);
}

HalfPeriodComparison compare_half_periods(const Torus& torus, double tie_tol) {
  const GreenFunction g(torus);
  const auto& v = g.inv();
  const auto hp = half_periods(torus);
  const cplx e[3] = {v.e1, v.e2, v.e3};
  HalfPeriodComparison c;
  c.tie_tol = tie_tol;
  for (int k = 0; k < 3; ++k) c.g_rel[k] = g.value_rel(hp[k]);
  const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (int p = 0; p < 3; ++p) {
    const int i = pairs[p][0], j = pairs[p][1], k = pairs[p][2];
    c.direct[p] = c.g_rel[i] - c.g_rel[j];
    c.log_ratio[p] = std::log(std::abs((e[i] - e[k]) / (e[j] - e[k]))) / (8.0 * pi);
    c.abs_wp_log[p] = std::log(std::abs(e[i])) - std::log(std::abs(e[j]));
    const double gap = std::abs(c.direct[p] - c.log_ratio[p]) / std::max(1.0, std::abs(c.direct[p]));
    c.max_formula_gap = std::max(c.max_formula_gap, gap);
    c.order[p] = std::abs(c.direct[p]) <= tie_tol ? Order3::Tie : c.direct[p] > 0 ? Order3::Greater : Order3::Less;
    const bool wp_decided = std::abs(c.abs_wp_log[p]) > tie_tol;
    if (c.order[p] != Order3::Tie && wp_decided && (c.abs_wp_log[p] > 0) != (c.order[p] == Order3::Greater)) {
      c.consistent = false;
    }
  }
  if (c.max_formula_gap > tie_tol) c.consistent = false;
  if (!c.consistent) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "half-period comparison routes disagree at tau = %.17g%+.17gi (gap %.3g)",
                  torus.tau.real(), torus.tau.imag(), c.max_formula_gap);
    throw Error(ErrorCode::InconsistentComparison, buf);
  }
  return c;
}

double extra_regime_indicator(double b) {
  const EllipticInvariants v = invariants(make_torus(cplx(0.5, b)));
  const double k = (v.e1 + v.eta1).real();
  return k * (k - 2.0 * pi / b);
}

namespace {

// Root of f on (lo, hi) given a sign change, refined to machine precision.
std::optional<double> bracketed_root(const std::function<double(double)>& f, double lo, double hi) {
  const double flo = f(lo), fhi = f(hi);
  if (!(flo * fhi < 0.0)) return std::nullopt;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                   boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

RhombicExtraPoint locate_z0_on_rhombus_line(double b, double tol) {
  if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveImaginaryPart, "b must be positive");
  const double ind = extra_regime_indicator(b);
  if (!(ind > 0.0)) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "b = %.17g lies in [b0, b1]; only the half periods are critical", b);
    throw Error(ErrorCode::NotInExtraRegime, buf);
  }
  const Torus torus = make_torus(cplx(0.5, b));
  const GreenFunction g(torus);
  const double delta = 1e-7 * std::min(1.0, b);
  const double eps = CriticalOptions{}.degeneracy_eps;

  auto finish = [&](cplx z, const char* locus) -> std::optional<RhombicExtraPoint> {
    const auto r = refine_critical_point(g, z, std::max(tol, 1e-14));
    if (!r) return std::nullopt;
    for (const cplx h : half_periods(torus)) {
      if (coord_distance(*r, h, torus) < 1e-8) return std::nullopt;
    }
    return RhombicExtraPoint{make_point(g, *r, PointKind::ExtraPair, eps), locus};
  };

  const double k = (g.inv().e1 + g.inv().eta1).real();
  if (k > 0.0) {
    // 1/2 is a saddle with G_yy < 0: G_y changes sign on the segment 1/2 + i y, 0 < y < b.
    auto gy = [&](double y) { return g.grad(cplx(0.5, y))[1]; };
    if (auto y = bracketed_root(gy, delta, b - delta)) {
      if (auto p = finish(cplx(0.5, *y), "re_z_half")) return *p;
    }
  } else {
    auto gx = [&](double t) { return g.grad(cplx(t, 0.0))[0]; };
    if (auto t = bracketed_root(gx, delta, 0.5 - delta)) {
      if (auto p = finish(cplx(*t, 0.0), "real_axis")) return *p;
    }
    auto gy = [&](double y) { return g.grad(cplx(0.5, y))[1]; };
    if (auto y = bracketed_root(gy, delta, b - delta)) {
      if (auto p = finish(cplx(0.5, *y), "re_z_half")) return *p;
    }
  }
  CriticalOptions opt;
  opt.tol = std::clamp(tol, 1e-14, 1e-6);
  const CriticalSet set = find_critical_points(torus, opt);
  for (const auto& p : set.points) {
    if (p.kind == PointKind::ExtraPair) return RhombicExtraPoint{p, "cell"};
  }
  throw Error(ErrorCode::NoConvergence, "extra critical point not found although (e1 + eta1)(e1 + eta1 - 2pi/b) > 0");
}

}  // namespace tg

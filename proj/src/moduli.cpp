// moduli.cpp

#include "torus_green/moduli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "torus_green/errors.hpp"
#include "torus_green/parallel.hpp"
#include "torus_green/theta.hpp"

namespace tg {

namespace {

using std::numbers::pi;

struct Root {
  double b, residual, width;
};

Root increasing_root(const std::function<double(double)>& h, double lo, double hi, double tol, const char* name) {
  double flo = h(lo), fhi = h(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s has no sign change on [%g, %g] (values %.6g, %.6g)", name, lo, hi, flo, fhi);
    throw Error(ErrorCode::BracketFailure, buf);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = h(mid);
    if (fm == 0.0) return {mid, 0.0, 0.0};
    (fm < 0.0 ? lo : hi) = mid;
    (fm < 0.0 ? flo : fhi) = fm;
  }
  const double b = lo - flo * (hi - lo) / (fhi - flo);
  return {b, std::abs(h(b)), hi - lo};
}

}  // namespace

double e1_plus_eta1(double b) {
  const EllipticInvariants v = invariants(make_torus(cplx(0.5, b)));
  return (v.e1 + v.eta1).real();
}

ThresholdReport thresholds(double tol) {
  if (!(tol >= 1e-12)) throw Error(ErrorCode::InvalidArgument, "threshold tolerance must be at least 1e-12");
  const Root r0 = increasing_root(e1_plus_eta1, 0.05, 2.0, tol, "e1 + eta1");
  const Root r1 = increasing_root([](double b) { return e1_plus_eta1(b) - 2.0 * pi / b; }, 0.05, 2.0, tol,
                                  "e1 + eta1 - 2 pi / b");
  ThresholdReport rep;
  rep.b0 = r0.b;
  rep.b1 = r1.b;
  rep.residual_b0 = r0.residual;
  rep.residual_b1 = r1.residual;
  rep.bracket_width = std::max(r0.width, r1.width);
  rep.tol = tol;
  const EllipticInvariants v = invariants(make_torus(cplx(0.5, rep.b1)));
  rep.e2_over_e1_sq_at_b1 = std::norm(v.e2 / v.e1);
  return rep;
}

InequalityReport verify_fundamental_inequalities(const std::vector<double>& b_grid) {
  InequalityReport rep;
  for (double b : b_grid) {
    if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveImaginaryPart, "inequality grid needs b > 0");
  }
  const ThresholdReport th = thresholds(1e-12);
  auto violate = [&](double b, const char* what) { rep.violations.push_back({b, what}); };

  const InequalityRow* prev = nullptr;
  for (double b : b_grid) {
    InequalityRow row;
    row.b = b;
    const BDerivatives t2 = log_null_theta_b_derivs(2, b);
    const BDerivatives t3 = log_null_theta_b_derivs(3, b);
    row.theta2_bb = t2.d2;
    row.theta3_b = t3.d1;
    row.theta3_bb = t3.d2;
    const double h = 1e-3 * b;
    row.de1eta1_db = (-e1_plus_eta1(b + 2 * h) + 8 * e1_plus_eta1(b + h) - 8 * e1_plus_eta1(b - h) +
                      e1_plus_eta1(b - 2 * h)) /
                     (12 * h);
    const GreenFunction g(make_torus(cplx(0.5, b)));
    const EllipticInvariants& v = g.inv();
    row.half_e1_minus_eta1 = (0.5 * v.e1 - v.eta1).real();
    row.bridge1_gap = std::abs(-4 * pi * row.theta2_bb - row.de1eta1_db) / std::max(1.0, std::abs(row.de1eta1_db));
    row.bridge2_gap = std::abs(4 * pi * row.theta3_b - row.half_e1_minus_eta1);
    const Hessian2 hs = g.hessian(0.5);
    row.gxx = hs.xx;
    row.gyy = hs.yy;

    if (!(-4 * pi * row.theta2_bb > 0)) violate(b, "-4 pi (log|theta2(0)|)_bb is not positive");
    if (!(row.bridge1_gap <= rep.bridge1_tol)) violate(b, "d(e1 + eta1)/db differs from -4 pi (log|theta2(0)|)_bb");
    if (!(row.theta3_b < 0)) violate(b, "(log|theta3(0)|)_b is not negative");
    if (!(row.theta3_bb > 0)) violate(b, "(log|theta3(0)|)_bb is not positive");
    if (!(row.bridge2_gap <= rep.bridge2_tol)) violate(b, "e1/2 - eta1 differs from 4 pi (log|theta3(0)|)_b");
    if (!(row.half_e1_minus_eta1 < 0)) violate(b, "e1/2 - eta1 is not negative");
    if (prev && prev->b < b && !(row.half_e1_minus_eta1 > prev->half_e1_minus_eta1)) {
      violate(b, "e1/2 - eta1 is not increasing");
    }
    const double margin = 1e-9;
    if (b < th.b0 - margin && !(row.gxx < 0 && row.gyy > 0)) violate(b, "Hessian signs at 1/2 are not (-,+) below b0");
    if (b > th.b0 + margin && b < th.b1 - margin && !(row.gxx > 0 && row.gyy > 0)) {
      violate(b, "Hessian signs at 1/2 are not (+,+) between b0 and b1");
    }
    if (b > th.b1 + margin && !(row.gxx > 0 && row.gyy < 0)) violate(b, "Hessian signs at 1/2 are not (+,-) above b1");
    rep.rows.push_back(row);
    prev = &rep.rows.back();
  }
  return rep;
}

double f_of_b(double b) { return log_theta1_b_derivs(0.5, b).d1; }

double functional_equation_residual(double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveImaginaryPart, "b must be positive");
  return std::abs(f_of_b(1.0 / (4.0 * b)) + 2.0 * b + 4.0 * b * b * f_of_b(b));
}

double lambda_circle_residual(cplx tau) {
  const EllipticInvariants v = invariants(make_torus(tau));
  return std::abs(std::abs(v.lambda - 1.0) - 1.0);
}

cplx scan_node(const Region& r, int nx, int ny, int i, int j) {
  const double re = nx > 1 ? r.re0 + (r.re1 - r.re0) * i / (nx - 1) : r.re0;
  const double im = ny > 1 ? r.im0 + (r.im1 - r.im0) * j / (ny - 1) : r.im0;
  return {re, im};
}

namespace {

ScanCell classify_cell(cplx tau, double tol) {
  ScanCell cell;
  cell.tau = tau;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    CriticalOptions opt;
    opt.tol = tol;
    const CriticalSet set = find_critical_points(make_torus(tau), opt);
    cell.count = set.total_count;
    int mins = 0, which = 0;
    for (const auto& p : set.points) {
      if (p.kind == PointKind::ExtraPair) {
        if (!cell.extra_point) cell.extra_point = p.coords;
      } else if (p.morse == MorseClass::Min) {
        ++mins;
        which = int(p.kind) + 1;
      }
    }
    if (cell.count == 3 && mins == 1) cell.min_half_period = which;
  } catch (const Error& e) {
    cell.count = 0;
    cell.error = e.what();
  }
  cell.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

void check_scan_args(const Region& region, int nx, int ny) {
  if (nx < 1 || ny < 1 || nx > 512 || ny > 512) throw Error(ErrorCode::InvalidArgument, "grid sizes must be in [1, 512]");
  if (!(region.im0 > 0.0 && region.im1 > 0.0)) {
    throw Error(ErrorCode::NonPositiveImaginaryPart, "scan region must lie in the upper half plane");
  }
}

void find_flips(ScanResult& res) {
  auto flip = [&](const ScanCell& a, const ScanCell& b) {
    if (a.count == 0 || b.count == 0 || a.count == b.count) return;
    CountFlip f;
    f.midpoint = 0.5 * (a.tau + b.tau);
    f.count_a = a.count;
    f.count_b = b.count;
    f.degenerating_half_period = a.count == 3 ? a.min_half_period : b.min_half_period;
    res.flips.push_back(f);
  };
  for (int j = 0; j < res.ny; ++j) {
    for (int i = 0; i < res.nx; ++i) {
      if (i + 1 < res.nx) flip(res.at(i, j), res.at(i + 1, j));
      if (j + 1 < res.ny) flip(res.at(i, j), res.at(i, j + 1));
    }
  }
}

ScanResult prepare(const Region& region, int nx, int ny, double tol) {
  check_scan_args(region, nx, ny);
  ScanResult res;
  res.region = region;
  res.nx = nx;
  res.ny = ny;
  res.tol = tol;
  res.cells.resize(size_t(nx) * size_t(ny));
  return res;
}

}  // namespace

ScanResult scan(const Region& region, int nx, int ny, double tol) {
  ScanResult res = prepare(region, nx, ny, tol);
#pragma omp parallel for schedule(dynamic, 1) num_threads(configured_threads())
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) res.cells[size_t(j) * nx + i] = classify_cell(scan_node(region, nx, ny, i, j), tol);
  }
  find_flips(res);
  return res;
}

ScanResult scan_serial(const Region& region, int nx, int ny, double tol) {
  ScanResult res = prepare(region, nx, ny, tol);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) res.cells[size_t(j) * nx + i] = classify_cell(scan_node(region, nx, ny, i, j), tol);
  }
  find_flips(res);
  return res;
}

}  // namespace tg

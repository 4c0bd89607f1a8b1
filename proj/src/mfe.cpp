// mfe.cpp

#include "torus_green/mfe.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "torus_green/critical.hpp"
#include "torus_green/errors.hpp"
#include "torus_green/parallel.hpp"
#include "torus_green/quadrature.hpp"

namespace tg {

namespace {

using std::numbers::pi;
constexpr double kStencilStep = 1e-3;

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

DevelopingMap8pi::DevelopingMap8pi(const Torus& torus, cplx z0, double critical_tol) : w_(torus), z0_(z0) {
  const Weierstrass::Jet j = w_.jet(z0);
  zeta_z0_ = j.zeta;
  wp_z0_ = j.wp;
  wp1_z0_ = j.wp1;
  if (std::abs(j.wp1) < 1e-8 * (1.0 + std::pow(std::abs(j.wp), 1.5))) {
    throw Error(ErrorCode::HalfPeriodBranch, "wp'(z0) = 0: z0 is a half period and f would be constant");
  }
  const LatticeCoords c = to_lattice(z0, torus);
  const cplx residual = j.zeta - c.t * w_.inv().eta1 - c.s * w_.inv().eta2;
  if (std::abs(residual) > critical_tol * (1.0 + std::abs(j.zeta))) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "|zeta(z0) - t eta1 - s eta2| = %.3g at z0 = %.17g%+.17gi", std::abs(residual),
                  z0.real(), z0.imag());
    throw Error(ErrorCode::NotACriticalPoint, buf);
  }
  sigma_ratio0_ = w_.sigma(z0) / w_.sigma(z0);
}

LogComplex DevelopingMap8pi::f(cplx z) const {
  const LogComplex num = w_.sigma(z0_ - z);
  const LogComplex den = w_.sigma(z0_ + z);
  if (num.is_zero()) return LogComplex::zero();
  if (den.is_zero()) return {std::numeric_limits<double>::infinity(), 0.0};
  return LogComplex::exp_of(2.0 * zeta_z0_ * z) * num / den / sigma_ratio0_;
}

cplx DevelopingMap8pi::log_derivative(cplx z) const { return 2.0 * zeta_z0_ - w_.zeta(z0_ - z) - w_.zeta(z0_ + z); }

cplx DevelopingMap8pi::integrand(cplx z) const { return wp1_z0_ / (w_.wp(z) - wp_z0_); }

cplx DevelopingMap8pi::multiplier_exponent(int j) const {
  const auto& v = w_.inv();
  if (j == 1) return 2.0 * (zeta_z0_ - v.eta1 * z0_);
  if (j == 2) return 2.0 * (w_.torus().tau * zeta_z0_ - v.eta2 * z0_);
  throw Error(ErrorCode::InvalidArgument, "multiplier index must be 1 or 2");
}

DevelopingMap4pi::DevelopingMap4pi(const Torus& torus)
    : torus_(torus), w2_(make_torus(2.0 * torus.tau)), a_(-0.5), b_(0.5 + torus.tau) {
  kappa_ = w2_.zeta(-a_) - w2_.zeta(-b_);
  sa_ = w2_.sigma(-a_);
  sb_ = w2_.sigma(-b_);
  log_f0_ = -0.5 * ratio(torus_.tau).log_mag;
}

LogComplex DevelopingMap4pi::ratio(cplx z) const {
  const LogComplex num = w2_.sigma(z - b_);
  const LogComplex den = w2_.sigma(z - a_);
  if (num.is_zero()) return LogComplex::zero();
  if (den.is_zero()) return {std::numeric_limits<double>::infinity(), 0.0};
  return LogComplex::exp_of(kappa_ * z) * num / sb_ * sa_ / den;
}

LogComplex DevelopingMap4pi::f(cplx z) const {
  LogComplex r = ratio(z);
  r.log_mag += log_f0_;
  return r;
}

cplx DevelopingMap4pi::log_derivative(cplx z) const { return -w2_.zeta(z - a_) + w2_.zeta(z - b_) + kappa_; }

cplx DevelopingMap4pi::c_prime() const { return (f(1.0) / f(0.0)).value(); }

cplx DevelopingMap4pi::c_tau(cplx z) const { return (f(z + torus_.tau) * f(z)).value(); }

cplx DevelopingMap4pi::g_period_integral() const {
  const double depth = 0.5 * std::min(0.5, torus_.b);
  return integrate_path([this](cplx z) { return log_derivative(z); }, {0.0, cplx(0.5, -depth), 1.0}, 32, 16);
}

double MfeSolution::u(cplx z) const {
  if (distance_to_lattice(z, torus) == 0.0) return -std::numeric_limits<double>::infinity();
  auto eval = [&](cplx w) {
    try {
      const double lf = map->f(w).log_mag;
      const double lg = std::log(std::abs(map->log_derivative(w)));
      const double x = 2.0 * lambda + 2.0 * lf;
      return c1 + x + 2.0 * lg - 2.0 * softplus(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleAtLattice) throw;
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double v = eval(z);
  if (std::isfinite(v)) return v;
  // On a zero or pole of f, where |f'| is finite but f'/f is not.
  return 0.5 * (eval(z + 1e-9) + eval(z - 1e-9));
}

MfeSolution solution_8pi(const Torus& torus, cplx z0, double lambda) {
  MfeSolution s;
  s.rho = 8.0 * pi;
  s.torus = torus;
  s.branch = z0;
  s.lambda = lambda;
  s.c1 = std::log(8.0 / s.rho);
  s.map = std::make_shared<DevelopingMap8pi>(torus, z0);
  return s;
}

MfeSolution solution_8pi(const Torus& torus, double lambda) {
  const CriticalSet set = find_critical_points(torus);
  for (const auto& p : set.points) {
    if (p.kind == PointKind::ExtraPair) return solution_8pi(torus, p.z, lambda);
  }
  throw Error(ErrorCode::NoExtraCriticalPoint,
              "G has only the three half periods as critical points; no solution at rho = 8 pi");
}

MfeSolution solution_4pi(const Torus& torus) {
  auto map = std::make_shared<DevelopingMap4pi>(torus);
  const cplx I = map->g_period_integral();
  const double period_gap = std::min(std::abs(I - cplx(0, pi)), std::abs(I + cplx(0, pi)));
  const double cp_gap = std::abs(map->c_prime() + 1.0);
  const double ct_gap = std::abs(std::abs(map->c_tau(cplx(0.123, 0.0457))) - 1.0);
  if (period_gap > 1e-8 || cp_gap > 1e-8 || ct_gap > 1e-8) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "g-period gap %.3g, |c' + 1| = %.3g, ||c| - 1| = %.3g", period_gap, cp_gap, ct_gap);
    throw Error(ErrorCode::ConstructionInconsistent, buf);
  }
  MfeSolution s;
  s.rho = 4.0 * pi;
  s.torus = torus;
  s.c1 = std::log(8.0 / s.rho);
  s.map = map;
  return s;
}

namespace {

struct RowStats {
  double max_res = 0.0, sum_res = 0.0, dev1 = 0.0, dev_tau = 0.0;
  int points = 0;
};

RowStats verify_row(const MfeSolution& sol, int n, int j, double excl) {
  RowStats r;
  const double h = kStencilStep;
  const cplx tau = sol.torus.tau;
  for (int i = 0; i < n; ++i) {
    const cplx z = double(i) / n + (double(j) / n) * tau;
    if (distance_to_lattice(z, sol.torus) < excl) continue;
    const double u0 = sol.u(z);
    auto d2 = [&](cplx e) {
      return (-sol.u(z + 2.0 * h * e) + 16.0 * sol.u(z + h * e) - 30.0 * u0 + 16.0 * sol.u(z - h * e) -
              sol.u(z - 2.0 * h * e)) /
             (12.0 * h * h);
    };
    const double res = std::abs(d2(1.0) + d2(cplx(0, 1)) + sol.rho * std::exp(u0));
    r.max_res = std::max(r.max_res, res);
    r.sum_res += res;
    r.dev1 = std::max(r.dev1, std::abs(sol.u(z + 1.0) - u0));
    r.dev_tau = std::max(r.dev_tau, std::abs(sol.u(z + tau) - u0));
    ++r.points;
  }
  return r;
}

void check_verify_args(int grid_n, double excl) {
  if (grid_n < 32) throw Error(ErrorCode::InvalidArgument, "verification grid must have at least 32 points per side");
  if (!(excl >= 0.02)) throw Error(ErrorCode::InvalidArgument, "exclusion radius must be at least 0.02");
}

VerifyReport merge(const std::vector<RowStats>& rows, int grid_n, double excl) {
  VerifyReport rep;
  rep.grid_n = grid_n;
  rep.exclusion_radius = excl;
  rep.h = kStencilStep;
  double sum = 0.0;
  for (const auto& r : rows) {
    rep.max_residual = std::max(rep.max_residual, r.max_res);
    rep.periodicity_dev_1 = std::max(rep.periodicity_dev_1, r.dev1);
    rep.periodicity_dev_tau = std::max(rep.periodicity_dev_tau, r.dev_tau);
    rep.points += r.points;
    sum += r.sum_res;
  }
  rep.mean_residual = rep.points ? sum / rep.points : 0.0;
  return rep;
}

}  // namespace

VerifyReport verify_solution(const MfeSolution& sol, int grid_n, double excl_radius) {
  check_verify_args(grid_n, excl_radius);
  std::vector<RowStats> rows(grid_n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(configured_threads())
  for (int j = 0; j < grid_n; ++j) rows[j] = verify_row(sol, grid_n, j, excl_radius);
  return merge(rows, grid_n, excl_radius);
}

VerifyReport verify_solution_serial(const MfeSolution& sol, int grid_n, double excl_radius) {
  check_verify_args(grid_n, excl_radius);
  std::vector<RowStats> rows(grid_n);
  for (int j = 0; j < grid_n; ++j) rows[j] = verify_row(sol, grid_n, j, excl_radius);
  return merge(rows, grid_n, excl_radius);
}

double mass(const MfeSolution& sol, int n) {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const cplx z = (i + 0.5) / n + ((j + 0.5) / n) * sol.torus.tau;
      sum += std::exp(sol.u(z));
    }
  }
  return sum * sol.torus.b / (double(n) * n);
}

cplx argmax_u(const MfeSolution& sol, int grid) {
  cplx best = 0.0;
  double best_u = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const cplx z = (i + 0.5) / grid + ((j + 0.5) / grid) * sol.torus.tau;
      const double v = sol.u(z);
      if (v > best_u) {
        best_u = v;
        best = z;
      }
    }
  }
  const cplx dirs[4] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};
  for (double step = std::min(1.0, sol.torus.b) / grid; step > 1e-12;) {
    bool moved = false;
    for (const cplx d : dirs) {
      const double v = sol.u(best + step * d);
      if (v > best_u) {
        best_u = v;
        best += step * d;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace tg

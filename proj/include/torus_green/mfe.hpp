// mfe.hpp
// Explicit solutions of the mean field equation  Delta u + rho e^u = rho delta_0
// on the torus for rho = 8 pi and rho = 4 pi, written through a developing map f:
//   u_lambda = c1 + log( e^{2 lambda} |f'|^2 / (1 + e^{2 lambda} |f|^2)^2 ),
// c1 = log(8 / rho).

#pragma once

#include <memory>
#include <optional>

#include "torus_green/green.hpp"

namespace tg {

/// Multivalued meromorphic map with f(0) = 1 (8 pi) or |f| balanced (4 pi).
class DevelopingMap {
 public:
  virtual ~DevelopingMap() = default;
  virtual LogComplex f(cplx z) const = 0;
  /// f'/f.
  virtual cplx log_derivative(cplx z) const = 0;
};

/// f(z) = exp(2 zeta(z0) z) sigma(z0 - z) / sigma(z0 + z), the integral of
/// wp'(z0) / (wp(xi) - wp(z0)) from 0 written in closed form.
class DevelopingMap8pi : public DevelopingMap {
 public:
  /// Throws NotACriticalPoint or HalfPeriodBranch.
  DevelopingMap8pi(const Torus& torus, cplx z0, double critical_tol = 1e-8);

  LogComplex f(cplx z) const override;
  cplx log_derivative(cplx z) const override;
  /// wp'(z0) / (wp(z) - wp(z0)), the integrand of the defining integral.
  cplx integrand(cplx z) const;
  /// F_j(z0) = 2 (omega_j zeta(z0) - eta_j z0); f(z + omega_j) = e^{F_j} f(z).
  cplx multiplier_exponent(int j) const;
  cplx branch() const { return z0_; }
  const Weierstrass& weierstrass() const { return w_; }

 private:
  Weierstrass w_;
  cplx z0_;
  cplx zeta_z0_;
  cplx wp_z0_, wp1_z0_;
  LogComplex sigma_ratio0_;
};

/// Construction on the doubled torus C / (Z + 2 tau Z) with poles of
/// g = f'/f at a = -1/2 and b = 1/2 + tau:
///   g(z) = -zeta''(z - a) + zeta''(z - b) + kappa,  g(0) = 0.
class DevelopingMap4pi : public DevelopingMap {
 public:
  explicit DevelopingMap4pi(const Torus& torus);

  LogComplex f(cplx z) const override;
  cplx log_derivative(cplx z) const override;
  /// f(1) / f(0); equal to -1 for a valid construction.
  cplx c_prime() const;
  /// f(z + tau) f(z), independent of z with modulus 1.
  cplx c_tau(cplx z) const;
  /// Integral of g over [0, 1] along a path passing below the pole at 1/2.
  cplx g_period_integral() const;
  const Weierstrass& doubled() const { return w2_; }

 private:
  LogComplex ratio(cplx z) const;
  Torus torus_;
  Weierstrass w2_;
  cplx a_, b_, kappa_;
  LogComplex sa_, sb_;  ///< sigma''(-a), sigma''(-b)
  double log_f0_ = 0.0;
};

struct MfeSolution {
  double rho = 0.0;
  Torus torus{};
  std::optional<cplx> branch;  ///< z0 for rho = 8 pi
  double lambda = 0.0;
  double c1 = 0.0;
  std::shared_ptr<const DevelopingMap> map;

  /// u_lambda(z); -infinity at lattice points.
  double u(cplx z) const;
};

/// Throws NotACriticalPoint / HalfPeriodBranch.
MfeSolution solution_8pi(const Torus& torus, cplx z0, double lambda = 0.0);
/// Uses the extra critical point of G; throws NoExtraCriticalPoint when G has
/// only the three half periods.
MfeSolution solution_8pi(const Torus& torus, double lambda = 0.0);
/// Throws ConstructionInconsistent when the g-period, c' or |c| checks fail.
MfeSolution solution_4pi(const Torus& torus);

struct VerifyReport {
  int grid_n = 0;
  double exclusion_radius = 0.0;
  double h = 0.0;  ///< Laplacian stencil step
  int points = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double periodicity_dev_1 = 0.0;    ///< max |u(z + 1) - u(z)|
  double periodicity_dev_tau = 0.0;  ///< max |u(z + tau) - u(z)|
};

/// |Delta u + rho e^u| on the grid (i + j tau) / n minus disks around the
/// lattice; the Laplacian uses the fourth-order cross stencil with h = 1e-3.
/// Rows are distributed over OpenMP threads.
VerifyReport verify_solution(const MfeSolution& sol, int grid_n = 64, double excl_radius = 0.05);
VerifyReport verify_solution_serial(const MfeSolution& sol, int grid_n = 64, double excl_radius = 0.05);

/// Integral of e^u over the cell (periodic trapezoid rule); 1 for an exact solution.
double mass(const MfeSolution& sol, int n = 256);

/// Location of max u over the cell (grid search then compass refinement).
cplx argmax_u(const MfeSolution& sol, int grid = 128);

}  // namespace tg

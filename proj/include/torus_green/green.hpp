// green.hpp
// Green function of the flat torus C / (Z + Z tau):
//   G(z) = -(1/2pi) log|theta1(z)| + y^2 / (2b) + C(tau),
// normalised to zero mean over the cell. y is the imaginary part of the
// canonical representative of z, which makes every quantity below exactly
// doubly periodic.

#pragma once

#include <array>

#include "torus_green/lattice.hpp"
#include "torus_green/weier.hpp"

namespace tg {

struct Hessian2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
  double det = 0.0;
  double trace() const { return xx + yy; }
};

struct GreenEval {
  double value_rel = 0.0;
  std::array<double, 2> grad{};
  Hessian2 hessian;
};

struct PeriodIntegrals {
  cplx F1, F2;
};

struct GreenConstant {
  double value = 0.0;
  double error_estimate = 0.0;  ///< |C(128^2 rule) - C(256^2 rule)|
};

class GreenFunction {
 public:
  explicit GreenFunction(const Torus& torus);

  const Torus& torus() const { return w_.torus(); }
  const Weierstrass& weierstrass() const { return w_; }
  const EllipticInvariants& inv() const { return w_.inv(); }

  /// G - C(tau). Throws PoleAtLattice.
  double value_rel(cplx z) const;
  /// Gradient from (log theta1)_z + 2 pi i y / b.
  std::array<double, 2> grad(cplx z) const;
  /// Gradient from 2 pi (G_x - i G_y) = eta1 t + eta2 s - zeta(z).
  std::array<double, 2> grad_zeta(cplx z) const;
  Hessian2 hessian(cplx z) const;
  /// Value, gradient and Hessian from a single theta evaluation.
  GreenEval eval(cplx z) const;

  /// zeta(t + s tau) - t eta1 - s eta2.
  cplx critical_residual(double t, double s) const;
  /// F1 = 2 (zeta(z) - eta1 z), F2 = 2 (tau zeta(z) - eta2 z).
  PeriodIntegrals period_integrals(cplx z) const;

 private:
  Weierstrass w_;
};

double green_rel(cplx z, const Torus& torus);
std::array<double, 2> green_grad(cplx z, const Torus& torus);
Hessian2 green_hessian(cplx z, const Torus& torus);
cplx critical_residual(double t, double s, const Torus& torus);
PeriodIntegrals period_integrals(cplx z, const Torus& torus);

/// C(tau) with zero cell mean. The smooth part G + (1/2pi) log|z| is
/// integrated with a tensor Gauss-Legendre rule, the logarithm exactly over
/// four triangles. Cached per tau. Throws QuadratureNotConverged when the two
/// rule sizes disagree by more than 1e-8 b.
GreenConstant green_constant(const Torus& torus);

/// Exact integral of log|z| over the cell {t + s tau : -1/2 <= t, s < 1/2}.
double cell_log_integral(cplx tau);

}  // namespace tg

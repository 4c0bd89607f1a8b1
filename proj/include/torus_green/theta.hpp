// theta.hpp
// Jacobi theta functions with nome q = exp(pi i tau):
//   theta1(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
// and the null values of theta2, theta3, theta4. Values are returned in log
// space; z is first reduced into the fundamental cell with the exact
// quasi-periodicity factor, and moduli with Im tau < 1/2 are moved up through
// the imaginary transformation before summing.

#pragma once

#include "torus_green/lattice.hpp"
#include "torus_green/log_complex.hpp"

namespace tg {

/// theta1 and its logarithmic z-derivatives (log theta1)', '', ''' at one
/// point. `value` is LogComplex::zero() at lattice points, where the
/// derivatives are not finite.
struct Theta1Jet {
  LogComplex value;
  cplx d1;
  cplx d2;
  cplx d3;
};

Theta1Jet theta1_jet(cplx z, cplx tau);

LogComplex theta1(cplx z, const Torus& torus);

/// (log theta1)_z for order 1, (log theta1)_zz for order 2 and the third
/// derivative for order 3. Throws PoleAtLattice at lattice points.
cplx theta1_logderiv_z(cplx z, const Torus& torus, int order);

/// Direct q-series without any modular transformation (z is still reduced
/// into the cell). Throws Unconverged when 64 terms do not reach double
/// precision.
LogComplex theta1_direct(cplx z, cplx tau);

/// theta1 through one application of tau -> -1/tau:
///   theta1(z; tau) = -i (-i tau)^{-1/2} exp(pi i tau' z^2) theta1(z tau'; tau').
LogComplex jacobi_imaginary(cplx z, cplx tau);

struct ThetaSpecials {
  cplx th2_0;
  cplx th3_0;
  cplx th4_0;
  cplx th1p_0;    ///< theta1'(0)
  cplx th1ppp_0;  ///< theta1'''(0)
};

ThetaSpecials theta_specials(const Torus& torus);

/// Null value theta_k(0; tau), k in {2, 3, 4}, with first and second
/// tau-derivatives of its logarithm.
struct NullThetaJet {
  LogComplex value;
  cplx dlog_tau;
  cplx d2log_tau;
};

NullThetaJet null_theta_jet(int k, cplx tau);

/// Derivatives of log|theta| in b along tau = 1/2 + i b.
struct BDerivatives {
  double d1;
  double d2;
};

/// b-derivatives of log|theta1(z; 1/2 + i b)| for real z. z = 1/2 (mod 1)
/// goes through the null value theta2(0), which stays accurate for small b;
/// other z use the termwise differentiated series.
BDerivatives log_theta1_b_derivs(double z, double b);

/// Same for log|theta_k(0; 1/2 + i b)|, k in {2, 3, 4}.
BDerivatives log_null_theta_b_derivs(int k, double b);

}  // namespace tg

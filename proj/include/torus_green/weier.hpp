// weier.hpp
// Weierstrass functions of the lattice Z + Z tau, all derived from theta1:
//   zeta(z)  = (log theta1)'(z) + eta1 z
//   wp(z)    = -(log theta1)''(z) - eta1
//   sigma(z) = exp(eta1 z^2 / 2) theta1(z) / theta1'(0)
// with eta1 = -theta1'''(0) / (3 theta1'(0)) and eta2 from the Legendre
// relation eta1 tau - eta2 = 2 pi i.

#pragma once

#include "torus_green/lattice.hpp"
#include "torus_green/log_complex.hpp"
#include "torus_green/theta.hpp"

namespace tg {

struct EllipticInvariants {
  cplx e1, e2, e3;  ///< wp at 1/2, tau/2, (1 + tau)/2
  cplx eta1, eta2;  ///< eta_i = 2 zeta(omega_i / 2)
  cplx g2, g3;
  cplx lambda;  ///< (e3 - e2) / (e1 - e2)
};

EllipticInvariants invariants(const Torus& torus);

/// Weierstrass functions for one torus with the invariants computed once.
/// Immutable after construction and safe to share between threads.
class Weierstrass {
 public:
  explicit Weierstrass(const Torus& torus);

  const Torus& torus() const { return torus_; }
  const EllipticInvariants& inv() const { return inv_; }
  const ThetaSpecials& specials() const { return specials_; }

  /// All three throw PoleAtLattice at lattice points.
  cplx zeta(cplx z) const;
  /// order 0, 1, 2 for wp, wp', wp''.
  cplx wp(cplx z, int order = 0) const;
  LogComplex sigma(cplx z) const;

  /// wp, wp', wp'' and zeta from one theta evaluation.
  struct Jet {
    cplx zeta, wp, wp1, wp2;
  };
  Jet jet(cplx z) const;

 private:
  Torus torus_;
  ThetaSpecials specials_;
  EllipticInvariants inv_;
};

cplx zeta(cplx z, const Torus& torus);
cplx wp(cplx z, const Torus& torus, int order = 0);
LogComplex sigma(cplx z, const Torus& torus);

/// |zeta(2z) - 2 zeta(z) - wp''(z) / (2 wp'(z))|. Throws HalfPeriodInput when
/// wp'(z) vanishes, i.e. |wp'(z)| < 1e-8 (1 + |wp(z)|^{3/2}).
double addition_zeta_residual(cplx z, const Torus& torus);

}  // namespace tg

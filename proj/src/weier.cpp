// weier.cpp

#include "torus_green/weier.hpp"

#include <cmath>
#include <numbers>

#include "torus_green/errors.hpp"

namespace tg {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

Theta1Jet checked_jet(cplx z, const Torus& torus) {
  Theta1Jet j = theta1_jet(z, torus.tau);
  if (j.value.is_zero()) throw Error(ErrorCode::PoleAtLattice, "Weierstrass function evaluated at a lattice point");
  return j;
}

}  // namespace

Weierstrass::Weierstrass(const Torus& torus) : torus_(make_torus(torus.tau)), specials_(theta_specials(torus_)) {
  auto& v = inv_;
  v.eta1 = -specials_.th1ppp_0 / (3.0 * specials_.th1p_0);
  v.eta2 = v.eta1 * torus_.tau - 2.0 * pi * I;
  const auto hp = half_periods(torus_);
  v.e1 = -checked_jet(hp[0], torus_).d2 - v.eta1;
  v.e2 = -checked_jet(hp[1], torus_).d2 - v.eta1;
  v.e3 = -checked_jet(hp[2], torus_).d2 - v.eta1;
  v.g2 = -4.0 * (v.e1 * v.e2 + v.e2 * v.e3 + v.e3 * v.e1);
  v.g3 = 4.0 * v.e1 * v.e2 * v.e3;
  v.lambda = (v.e3 - v.e2) / (v.e1 - v.e2);
}

Weierstrass::Jet Weierstrass::jet(cplx z) const {
  // Work at the reduced point; zeta picks up m eta1 + n eta2 on the way back.
  const WrappedPoint w = wrap_point_with_shift(z, torus_);
  const cplx zr = z - double(w.m) - double(w.n) * torus_.tau;
  const Theta1Jet t = checked_jet(zr, torus_);
  Jet j;
  j.zeta = t.d1 + inv_.eta1 * zr + double(w.m) * inv_.eta1 + double(w.n) * inv_.eta2;
  j.wp = -t.d2 - inv_.eta1;
  j.wp1 = -t.d3;
  j.wp2 = 6.0 * j.wp * j.wp - inv_.g2 / 2.0;
  return j;
}

cplx Weierstrass::zeta(cplx z) const { return jet(z).zeta; }

cplx Weierstrass::wp(cplx z, int order) const {
  const Jet j = jet(z);
  switch (order) {
    case 0:
      return j.wp;
    case 1:
      return j.wp1;
    case 2:
      return j.wp2;
    default:
      throw Error(ErrorCode::InvalidArgument, "wp order must be 0, 1 or 2");
  }
}

LogComplex Weierstrass::sigma(cplx z) const {
  const LogComplex th = theta1(z, torus_);
  if (th.is_zero()) return th;
  return LogComplex::exp_of(inv_.eta1 * z * z / 2.0) * th / LogComplex::from(specials_.th1p_0);
}

EllipticInvariants invariants(const Torus& torus) { return Weierstrass(torus).inv(); }

cplx zeta(cplx z, const Torus& torus) { return Weierstrass(torus).zeta(z); }

cplx wp(cplx z, const Torus& torus, int order) { return Weierstrass(torus).wp(z, order); }

LogComplex sigma(cplx z, const Torus& torus) { return Weierstrass(torus).sigma(z); }

double addition_zeta_residual(cplx z, const Torus& torus) {
  const Weierstrass w(torus);
  const auto j = w.jet(z);
  if (std::abs(j.wp1) < 1e-8 * (1.0 + std::pow(std::abs(j.wp), 1.5))) {
    throw Error(ErrorCode::HalfPeriodInput, "wp'(z) vanishes; z is a half period");
  }
  return std::abs(w.zeta(2.0 * z) - 2.0 * j.zeta - j.wp2 / (2.0 * j.wp1));
}

}  // namespace tg

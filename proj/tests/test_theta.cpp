// test_theta.cpp

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torus_green/errors.hpp"
#include "torus_green/theta.hpp"

using namespace tg;
using oracle::I;
using oracle::pi;

namespace {

cplx log_value(const LogComplex& w) { return {w.log_mag, w.arg}; }

cplx wrap_arg(cplx w) { return {w.real(), std::remainder(w.imag(), 2.0 * pi)}; }

}  // namespace

TEST(Theta, MatchesPlainSeries) {
  oracle::Sampler rng(21);
  for (int k = 0; k < 100; ++k) {
    const cplx tau = rng.tau(0.6, 2.0);
    const cplx z{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5) * tau.imag()};
    const cplx ref = oracle::theta1_series(z, tau);
    EXPECT_LT(relative_difference(theta1(z, make_torus(tau)), LogComplex::from(ref)), 1e-13);
  }
}

TEST(Theta, ValueAtHalfOnRhombicTorus) {
  const cplx tau{0.5, 1.0};
  const cplx ref = oracle::theta1_series(0.5, tau, 40);
  EXPECT_LT(relative_difference(theta1(0.5, make_torus(tau)), LogComplex::from(ref)), 1e-14);
  const cplx leading = 2.0 * std::exp(I * pi / 8.0) * std::exp(-pi / 4.0);
  EXPECT_LT(std::abs(ref - leading) / std::abs(ref), 2.0 * std::exp(-2.0 * pi));
}

TEST(Theta, QuasiPeriodicity) {
  oracle::Sampler rng(22);
  for (int k = 0; k < 200; ++k) {
    const Torus T = make_torus(rng.tau(0.2, 3.0));
    const cplx z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const LogComplex a = theta1(z, T);
    EXPECT_LT(relative_difference(theta1(z + 1.0, T), -a), 1e-12);
    const LogComplex shifted = theta1(z + T.tau, T) * LogComplex::exp_of(I * pi * T.tau + 2.0 * pi * I * z);
    EXPECT_LT(relative_difference(shifted, -a), 1e-12);
  }
}

TEST(Theta, ZeroAtLatticePoints) {
  const Torus T = make_torus({0.1, 0.9});
  EXPECT_TRUE(theta1(0.0, T).is_zero());
  EXPECT_TRUE(theta1(2.0 - T.tau, T).is_zero());
  EXPECT_THROW(theta1_logderiv_z(1.0 + T.tau, T, 1), Error);
}

TEST(Theta, HeatEquation) {
  oracle::Sampler rng(23);
  const double h = 1e-5;
  for (int k = 0; k < 100; ++k) {
    const cplx tau = rng.tau(0.4, 2.0);
    const Torus T = make_torus(tau);
    const cplx z = rng.point(tau);
    const Theta1Jet j = theta1_jet(z, tau);
    const cplx lhs = j.d2 + j.d1 * j.d1;  // theta1'' / theta1
    const cplx up = log_value(theta1(z, make_torus(tau + h)));
    const cplx dn = log_value(theta1(z, make_torus(tau - h)));
    const cplx dlog_tau = wrap_arg(up - dn) / (2.0 * h);
    EXPECT_LT(std::abs(lhs - 4.0 * pi * I * dlog_tau), 1e-7 * std::max(1.0, std::abs(lhs))) << "tau=" << tau;
    (void)T;
  }
}

TEST(Theta, LogDerivativeMatchesFiniteDifference) {
  const Torus T = make_torus(I);
  const cplx z{0.3, 0.2};
  const double h = 1e-5;
  const cplx fd = wrap_arg(log_value(theta1(z + h, T)) - log_value(theta1(z - h, T))) / (2.0 * h);
  EXPECT_LT(std::abs(theta1_logderiv_z(z, T, 1) - fd), 1e-8);
  const cplx fd2 = (theta1_logderiv_z(z + h, T, 1) - theta1_logderiv_z(z - h, T, 1)) / (2.0 * h);
  EXPECT_LT(std::abs(theta1_logderiv_z(z, T, 2) - fd2), 1e-7);
  const cplx fd3 = (theta1_logderiv_z(z + h, T, 2) - theta1_logderiv_z(z - h, T, 2)) / (2.0 * h);
  EXPECT_LT(std::abs(theta1_logderiv_z(z, T, 3) - fd3), 1e-6);
}

TEST(Theta, TripleProduct) {
  for (double b = 0.2; b <= 10.0; b *= 1.3) {
    for (double re : {0.0, 0.25, 0.5}) {
      const ThetaSpecials sp = theta_specials(make_torus({re, b}));
      const cplx rhs = pi * sp.th2_0 * sp.th3_0 * sp.th4_0;
      EXPECT_LT(std::abs(sp.th1p_0 - rhs) / std::abs(rhs), 1e-12) << "b=" << b;
    }
  }
  const ThetaSpecials sq = theta_specials(make_torus(I));
  EXPECT_NEAR(std::abs(sq.th1p_0 / (pi * sq.th2_0 * sq.th3_0 * sq.th4_0)), 1.0, 1e-12);
}

TEST(Theta, Theta4IsConjugateOfTheta3OnRhombicLine) {
  for (double b = 0.2; b < 3.0; b += 0.1) {
    const ThetaSpecials sp = theta_specials(make_torus({0.5, b}));
    EXPECT_LT(std::abs(sp.th4_0 - std::conj(sp.th3_0)), 1e-13 * std::max(1.0, std::abs(sp.th3_0)));
  }
}

TEST(Theta, ImaginaryTransformationSelfDual) {
  EXPECT_LT(relative_difference(theta1_direct(0.3, I), jacobi_imaginary(0.3, I)), 1e-12);
}

TEST(Theta, ImaginaryTransformationSmallB) {
  const cplx tau{0.5, 0.1};
  EXPECT_LT(relative_difference(theta1_direct(0.5, tau), jacobi_imaginary(0.5, tau)), 1e-10);
}

TEST(Theta, ImaginaryTransformationRandom) {
  oracle::Sampler rng(24);
  for (int k = 0; k < 100; ++k) {
    const cplx tau = rng.tau(0.3, 1.5);
    const cplx z = rng.point(tau);
    EXPECT_LT(relative_difference(theta1_direct(z, tau), jacobi_imaginary(z, tau)), 1e-11) << tau << " " << z;
  }
}

TEST(Theta, NullJetMatchesFiniteDifference) {
  const cplx tau{0.2, 0.8};
  const double h = 1e-5;
  for (int k : {2, 3, 4}) {
    const NullThetaJet j = null_theta_jet(k, tau);
    const cplx fd =
        wrap_arg(log_value(null_theta_jet(k, tau + h).value) - log_value(null_theta_jet(k, tau - h).value)) / (2.0 * h);
    EXPECT_LT(std::abs(j.dlog_tau - fd), 1e-8);
    const cplx fd2 = (null_theta_jet(k, tau + h).dlog_tau - null_theta_jet(k, tau - h).dlog_tau) / (2.0 * h);
    EXPECT_LT(std::abs(j.d2log_tau - fd2), 1e-6);
  }
}

TEST(Theta, BDerivativesMatchFiniteDifference) {
  const double h = 1e-4;
  for (double b : {0.15, 0.4, 0.9, 2.0}) {
    auto lt1 = [](double z, double bb) { return theta1(z, make_torus({0.5, bb})).log_mag; };
    for (double z : {0.5, 0.3}) {
      const BDerivatives d = log_theta1_b_derivs(z, b);
      EXPECT_NEAR(d.d1, (lt1(z, b + h) - lt1(z, b - h)) / (2 * h), 1e-6 * std::max(1.0, std::abs(d.d1)));
      EXPECT_NEAR(d.d2, (lt1(z, b + h) - 2 * lt1(z, b) + lt1(z, b - h)) / (h * h),
                  1e-4 * std::max(1.0, std::abs(d.d2)));
    }
    for (int k : {2, 3, 4}) {
      auto ln = [k](double bb) { return null_theta_jet(k, {0.5, bb}).value.log_mag; };
      const BDerivatives d = log_null_theta_b_derivs(k, b);
      EXPECT_NEAR(d.d1, (ln(b + h) - ln(b - h)) / (2 * h), 1e-6 * std::max(1.0, std::abs(d.d1)));
    }
  }
}

// test_lattice.cpp

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torus_green/errors.hpp"
#include "torus_green/lattice.hpp"

using namespace tg;
using oracle::I;

TEST(Lattice, RejectsLowerHalfPlane) {
  EXPECT_THROW(make_torus({0.3, 0.0}), Error);
  EXPECT_THROW(make_torus({0.3, -1.0}), Error);
  try {
    make_torus({0.0, -2.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveImaginaryPart);
  }
}

TEST(Lattice, WrapRoundTrip) {
  oracle::Sampler rng(11);
  for (int k = 0; k < 10000; ++k) {
    const Torus T = make_torus(rng.tau(0.3, 3.0));
    const cplx z{rng.uniform(-20, 20), rng.uniform(-20, 20)};
    const WrappedPoint w = wrap_point_with_shift(z, T);
    EXPECT_GE(w.coords.t, -0.5);
    EXPECT_LT(w.coords.t, 0.5);
    EXPECT_GE(w.coords.s, -0.5);
    EXPECT_LT(w.coords.s, 0.5);
    const cplx back = (w.coords.t + double(w.m)) + (w.coords.s + double(w.n)) * T.tau;
    ASSERT_LT(std::abs(back - z), 1e-13 * std::max(1.0, std::abs(z)));
  }
}

TEST(Lattice, SolvesTheLinearSystem) {
  const Torus T = make_torus({0.5, 0.6});
  const cplx z{1.25, 0.6 * 1.25};
  // y = s b, x = t + s Re tau
  const double s = z.imag() / 0.6;
  const double t = z.real() - s * 0.5;
  const LatticeCoords c = to_lattice(z, T);
  EXPECT_NEAR(c.t, t, 1e-14);
  EXPECT_NEAR(c.s, s, 1e-14);
  EXPECT_LT(std::abs(from_lattice(c, T) - z), 1e-14);
  const LatticeCoords w = wrap_point(z, T);
  EXPECT_NEAR(w.t, t - std::round(t), 1e-14);
  EXPECT_NEAR(w.s, s - std::round(s), 1e-14);
}

TEST(Lattice, HalfPeriodConvention) {
  const Torus T = make_torus({0.2, 1.3});
  const LatticeCoords c = wrap_point((1.0 + T.tau) / 2.0, T);
  EXPECT_DOUBLE_EQ(c.t, -0.5);
  EXPECT_DOUBLE_EQ(c.s, -0.5);
  const auto hp = half_periods(T);
  EXPECT_EQ(hp[0], cplx(0.5));
  EXPECT_EQ(hp[1], T.tau / 2.0);
  EXPECT_EQ(hp[2], (1.0 + T.tau) / 2.0);
}

TEST(Lattice, DistanceToLattice) {
  const Torus T = make_torus(I);
  EXPECT_NEAR(distance_to_lattice({3.1, -2.0}, T), 0.1, 1e-13);
  EXPECT_NEAR(distance_to_lattice({0.5, 0.5}, T), std::sqrt(0.5), 1e-13);
}

TEST(Modulus, ReducesDeepCusp) {
  const cplx tau{0.5, 0.1};
  const ReducedModulus r = reduce_modulus(tau);
  EXPECT_GE(r.tau.imag(), std::sqrt(3.0) / 2.0 - 1e-14);
  EXPECT_LE(std::abs(r.tau.real()), 0.5 + 1e-14);
  EXPECT_GE(std::abs(r.tau), 1.0 - 1e-14);
  EXPECT_EQ(r.transform.det(), 1);
  EXPECT_LT(std::abs(r.transform.apply(tau) - r.tau), 1e-14);
}

TEST(Modulus, MoebiusIdentityOnRandomModuli) {
  oracle::Sampler rng(12);
  for (int k = 0; k < 500; ++k) {
    const cplx tau{rng.uniform(-5, 5), rng.uniform(0.02, 5)};
    const ReducedModulus r = reduce_modulus(tau);
    EXPECT_EQ(r.transform.det(), 1);
    EXPECT_LE(std::abs(r.tau.real()), 0.5 + 1e-12);
    EXPECT_GE(std::abs(r.tau), 1.0 - 1e-12);
    EXPECT_LT(std::abs(r.transform.apply(tau) - r.tau), 1e-13 * std::abs(r.tau));
  }
}

TEST(Modulus, CompositionMatchesSequentialAction) {
  const Modular S{0, -1, 1, 0}, T{1, 1, 0, 1};
  const cplx tau{0.3, 0.7};
  EXPECT_LT(std::abs(S.compose(T).apply(tau) - S.apply(T.apply(tau))), 1e-15);
  EXPECT_LT(std::abs(T.compose(S).apply(tau) - T.apply(S.apply(tau))), 1e-15);
}

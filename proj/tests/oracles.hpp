// oracles.hpp
// Reference computations that share no code path with the library.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace oracle {

using cplx = std::complex<double>;
using std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Eisenstein sums G4, G6, G8 over the lattice Z + Z tau from their q-expansions, q = exp(2 pi i tau).
inline std::array<cplx, 3> eisenstein(cplx tau) {
  const cplx q = std::exp(2.0 * pi * I * tau);
  cplx s3 = 0.0, s5 = 0.0, qn = 1.0;
  for (int n = 1; n < 400; ++n) {
    qn *= q;
    if (std::abs(qn) < 1e-20) break;
    double d3 = 0.0, d5 = 0.0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        d3 += std::pow(d, 3);
        d5 += std::pow(d, 5);
      }
    s3 += d3 * qn;
    s5 += d5 * qn;
  }
  const cplx e4 = 1.0 + 240.0 * s3, e6 = 1.0 - 504.0 * s5;
  return {std::pow(pi, 4) / 45.0 * e4, 2.0 * std::pow(pi, 6) / 945.0 * e6, std::pow(pi, 8) / 4725.0 * e4 * e4};
}

/// wp by the lattice sum over |m + n tau| <= radius, with the omitted tail
/// restored through the Laurent coefficients 3 G4 z^2 + 5 G6 z^4 + 7 G8 z^6.
inline cplx wp_lattice_sum(cplx z, cplx tau, double radius = 40.0) {
  cplx sum = 1.0 / (z * z), g4 = 0.0, g6 = 0.0, g8 = 0.0;
  const int nmax = static_cast<int>(std::ceil(radius / tau.imag())) + 1;
  for (int n = -nmax; n <= nmax; ++n) {
    const int mmax = static_cast<int>(std::ceil(radius + std::abs(n * tau.real()))) + 1;
    for (int m = -mmax; m <= mmax; ++m) {
      if (m == 0 && n == 0) continue;
      const cplx w = double(m) + double(n) * tau;
      if (std::abs(w) > radius) continue;
      sum += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
      const cplx w4 = 1.0 / (w * w * w * w);
      g4 += w4;
      g6 += w4 / (w * w);
      g8 += w4 * w4;
    }
  }
  const auto G = eisenstein(tau);
  const cplx z2 = z * z;
  return sum + 3.0 * z2 * (G[0] - g4) + 5.0 * z2 * z2 * (G[1] - g6) + 7.0 * z2 * z2 * z2 * (G[2] - g8);
}

/// theta1(z) from the plain q-series with complex arithmetic.
inline cplx theta1_series(cplx z, cplx tau, int terms = 40) {
  cplx s = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double h = n + 0.5;
    s += (n % 2 ? -1.0 : 1.0) * std::exp(I * pi * tau * h * h) * std::sin((2.0 * n + 1.0) * pi * z);
  }
  return 2.0 * s;
}

/// log|eta(tau)| for the Dedekind eta function, eta = q^{1/24} prod (1 - q^n), q = exp(2 pi i tau).
inline double log_abs_dedekind_eta(cplx tau) {
  double s = -pi * tau.imag() / 12.0;
  for (int n = 1; n < 2000; ++n) {
    const cplx qn = std::exp(2.0 * pi * I * tau * double(n));
    s += std::log(std::abs(1.0 - qn));
    if (std::abs(qn) < 1e-18) break;
  }
  return s;
}

/// Fixed-seed source of moduli and points.
class Sampler {
 public:
  explicit Sampler(unsigned long seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  cplx tau(double im_lo = 0.5, double im_hi = 2.0) { return {uniform(-0.5, 0.5), uniform(im_lo, im_hi)}; }
  /// Point t + s tau with t, s in the cell, kept at least `margin` (in t, s) away from 0 and the half periods.
  cplx point(cplx tau, double margin = 0.08) {
    for (;;) {
      const double t = uniform(-0.5, 0.5), s = uniform(-0.5, 0.5);
      bool ok = true;
      for (double ht : {0.0, 0.5, -0.5})
        for (double hs : {0.0, 0.5, -0.5})
          if (std::abs(t - ht) < margin && std::abs(s - hs) < margin) ok = false;
      if (ok) return t + s * tau;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

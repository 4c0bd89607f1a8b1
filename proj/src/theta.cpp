// theta.cpp

#include "torus_green/theta.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "torus_green/errors.hpp"

namespace tg {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Im tau below this goes through tau -> -1/tau first.
constexpr double kDirectFloor = 0.5;
// Terms below exp(-kDrop) relative to the leading one are dropped.
constexpr double kDrop = 45.0;
constexpr int kMaxTerms = 64;

// sin(w) exp(-|Im w|) and cos(w) exp(-|Im w|), finite for any w.
cplx scaled_sin(cplx w) {
  const double c = std::abs(w.imag());
  if (c < 30.0) return std::sin(w) * std::exp(-c);
  // One exponential dominates; exp(i w) or exp(-i w) has modulus exp(c).
  if (w.imag() > 0.0) return -std::exp(-I * w - c) / (2.0 * I);
  return std::exp(I * w - c) / (2.0 * I);
}

cplx scaled_cos(cplx w) {
  const double c = std::abs(w.imag());
  if (c < 30.0) return std::cos(w) * std::exp(-c);
  if (w.imag() > 0.0) return std::exp(-I * w - c) / 2.0;
  return std::exp(I * w - c) / 2.0;
}

// Reduction z = zr + m + n tau with zr in the centred cell, and the factor
// theta1(z) / theta1(zr) = (-1)^(m+n) q^(-n^2) exp(-2 pi i n zr) as an exponent.
struct Reduced {
  cplx zr;
  long n;
  cplx log_factor;
};

Reduced reduce_argument(cplx z, cplx tau) {
  const double b = tau.imag();
  const double s = z.imag() / b;
  const double n = std::nearbyint(s);
  const double t = z.real() - s * tau.real();
  const double m = std::nearbyint(t);
  Reduced r;
  r.zr = z - m - n * tau;
  r.n = static_cast<long>(n);
  r.log_factor = I * pi * std::fmod(m + n, 2.0) - I * pi * tau * (n * n) - 2.0 * pi * I * n * r.zr;
  return r;
}

bool is_lattice_zero(cplx zr, cplx z) { return std::abs(zr) <= 1e-15 * (1.0 + std::abs(z)); }

// Series at an already reduced argument (|Im zr| <= Im tau / 2).
Theta1Jet direct_series(cplx zr, cplx tau) {
  const double b = tau.imag();
  const double y = std::abs(zr.imag());
  // Leading magnitude: k = 0 term, exp(-pi b / 4 + pi |y|).
  const double lead = -pi * b / 4.0 + pi * y;
  cplx s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int k = 0;
  for (; k < kMaxTerms; ++k) {
    const double kk = k + 0.5;
    const double freq = (2.0 * k + 1.0) * pi;
    const cplx w = freq * zr;
    const cplx expo = I * pi * tau * (kk * kk) + std::abs(w.imag()) - lead;
    if (k > 0 && expo.real() + 3.0 * std::log(freq) < -kDrop) break;
    const cplx amp = (k % 2 == 0 ? 2.0 : -2.0) * std::exp(expo);
    const cplx sn = scaled_sin(w), cs = scaled_cos(w);
    s0 += amp * sn;
    s1 += amp * freq * cs;
    s2 -= amp * freq * freq * sn;
    s3 -= amp * freq * freq * freq * cs;
  }
  if (k == kMaxTerms) {
    throw Error(ErrorCode::Unconverged, "theta1 series did not converge for Im tau = " + std::to_string(b));
  }
  Theta1Jet jet;
  jet.value = LogComplex::exp_of(lead) * LogComplex::from(s0);
  if (jet.value.is_zero()) {
    jet.d1 = jet.d2 = jet.d3 = cplx(INFINITY, 0.0);
    return jet;
  }
  const cplx r1 = s1 / s0, r2 = s2 / s0, r3 = s3 / s0;
  jet.d1 = r1;
  jet.d2 = r2 - r1 * r1;
  jet.d3 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
  return jet;
}

Theta1Jet jet_reduced(cplx zr, cplx tau);

// theta1(z; tau) for Im tau < kDirectFloor: shift Re tau into [-1/2, 1/2],
// then apply the imaginary transformation.
Theta1Jet transformed_jet(cplx z, cplx tau) {
  const double shift = std::nearbyint(tau.real());
  const cplx ts = tau - shift;
  const cplx tp = -1.0 / ts;
  const Theta1Jet inner = jet_reduced(z * tp, tp);
  Theta1Jet jet;
  // -i (-i ts)^{-1/2} exp(pi i tp z^2), times exp(pi i shift / 4) for tau -> tau - shift.
  const cplx prefactor = -I * pi / 2.0 - 0.5 * std::log(-I * ts) + I * pi * tp * z * z +
                         I * pi * std::fmod(shift, 8.0) / 4.0;
  jet.value = LogComplex::exp_of(prefactor) * inner.value;
  jet.d1 = 2.0 * pi * I * tp * z + tp * inner.d1;
  jet.d2 = 2.0 * pi * I * tp + tp * tp * inner.d2;
  jet.d3 = tp * tp * tp * inner.d3;
  return jet;
}

Theta1Jet jet_reduced(cplx z, cplx tau) {
  const Reduced r = reduce_argument(z, tau);
  Theta1Jet jet;
  if (is_lattice_zero(r.zr, z)) {
    jet.value = LogComplex::zero();
    jet.d1 = jet.d2 = jet.d3 = cplx(INFINITY, 0.0);
    return jet;
  }
  jet = tau.imag() >= kDirectFloor ? direct_series(r.zr, tau) : transformed_jet(r.zr, tau);
  if (!jet.value.is_zero()) jet.value = LogComplex::exp_of(r.log_factor) * jet.value;
  jet.d1 -= 2.0 * pi * I * double(r.n);
  return jet;
}

// ---- null values ----------------------------------------------------------

// Generic sum  sum_k c_k exp(pi i tau e_k)  with e_k >= e_0, returning the
// value and the tau-derivatives of its logarithm.
template <typename Coef, typename Expo>
NullThetaJet null_series(cplx tau, Coef coef, Expo expo, int first) {
  const double e0 = expo(first);
  cplx s0 = 0.0, s1 = 0.0, s2 = 0.0;
  int k = first;
  for (; k < first + kMaxTerms; ++k) {
    const double e = expo(k);
    const cplx term = coef(k) * std::exp(I * pi * tau * (e - e0));
    if (k > first + 1 && -pi * tau.imag() * (e - e0) + 2.0 * std::log(1.0 + pi * e) < -kDrop) break;
    const cplx de = I * pi * e;
    s0 += term;
    s1 += de * term;
    s2 += de * de * term;
  }
  if (k == first + kMaxTerms) {
    throw Error(ErrorCode::Unconverged, "theta null series did not converge for Im tau = " +
                                            std::to_string(tau.imag()));
  }
  NullThetaJet jet;
  jet.value = LogComplex::exp_of(I * pi * tau * e0) * LogComplex::from(s0);
  jet.dlog_tau = s1 / s0;
  jet.d2log_tau = s2 / s0 - jet.dlog_tau * jet.dlog_tau;
  return jet;
}

NullThetaJet null_direct(int k, cplx tau) {
  switch (k) {
    case 2:
      return null_series(
          tau, [](int) { return cplx(2.0); }, [](int n) { return (n + 0.5) * (n + 0.5); }, 0);
    case 3:
      return null_series(
          tau, [](int n) { return cplx(n == 0 ? 1.0 : 2.0); }, [](int n) { return double(n) * n; }, 0);
    case 4:
      return null_series(
          tau, [](int n) { return cplx(n == 0 ? 1.0 : (n % 2 ? -2.0 : 2.0)); },
          [](int n) { return double(n) * n; }, 0);
    default:
      throw Error(ErrorCode::InvalidArgument, "null theta index must be 2, 3 or 4");
  }
}

// theta1'(0) and theta1'''(0) from their series.
std::array<cplx, 2> theta1_derivs_direct(cplx tau) {
  cplx s1 = 0.0, s3 = 0.0;
  int k = 0;
  for (; k < kMaxTerms; ++k) {
    const double kk = k + 0.5;
    const double freq = (2.0 * k + 1.0) * pi;
    const cplx term = (k % 2 == 0 ? 2.0 : -2.0) * std::exp(I * pi * tau * (kk * kk - 0.25));
    if (k > 0 && std::log(std::abs(term)) + 3.0 * std::log(freq) < -kDrop) break;
    s1 += term * freq;
    s3 -= term * freq * freq * freq;
  }
  if (k == kMaxTerms) throw Error(ErrorCode::Unconverged, "theta1 derivative series did not converge");
  const cplx q4 = std::exp(I * pi * tau / 4.0);
  return {q4 * s1, q4 * s3};
}

std::array<cplx, 2> theta1_derivs(cplx tau) {
  if (tau.imag() >= kDirectFloor) return theta1_derivs_direct(tau);
  const double shift = std::nearbyint(tau.real());
  const cplx ts = tau - shift;
  const cplx tp = -1.0 / ts;
  const auto inner = theta1_derivs(tp);
  const cplx pre = -I * std::exp(-0.5 * std::log(-I * ts) + I * pi * std::fmod(shift, 8.0) / 4.0);
  const cplx d1 = pre * tp * inner[0];
  const cplx d3 = pre * (tp * tp * tp * inner[1] + 6.0 * pi * I * tp * tp * inner[0]);
  return {d1, d3};
}

}  // namespace

Theta1Jet theta1_jet(cplx z, cplx tau) {
  make_torus(tau);
  return jet_reduced(z, tau);
}

LogComplex theta1(cplx z, const Torus& torus) { return jet_reduced(z, torus.tau).value; }

cplx theta1_logderiv_z(cplx z, const Torus& torus, int order) {
  const Theta1Jet jet = jet_reduced(z, torus.tau);
  if (jet.value.is_zero()) throw Error(ErrorCode::PoleAtLattice, "log-derivative of theta1 at a lattice point");
  switch (order) {
    case 1:
      return jet.d1;
    case 2:
      return jet.d2;
    case 3:
      return jet.d3;
    default:
      throw Error(ErrorCode::InvalidArgument, "order must be 1, 2 or 3");
  }
}

LogComplex theta1_direct(cplx z, cplx tau) {
  make_torus(tau);
  const Reduced r = reduce_argument(z, tau);
  if (is_lattice_zero(r.zr, z)) return LogComplex::zero();
  return LogComplex::exp_of(r.log_factor) * direct_series(r.zr, tau).value;
}

LogComplex jacobi_imaginary(cplx z, cplx tau) {
  make_torus(tau);
  const Reduced r = reduce_argument(z, tau);
  if (is_lattice_zero(r.zr, z)) return LogComplex::zero();
  const cplx tp = -1.0 / tau;
  const cplx prefactor = -I * pi / 2.0 - 0.5 * std::log(-I * tau) + I * pi * tp * r.zr * r.zr;
  return LogComplex::exp_of(r.log_factor + prefactor) * jet_reduced(r.zr * tp, tp).value;
}

NullThetaJet null_theta_jet(int k, cplx tau) {
  make_torus(tau);
  if (k < 2 || k > 4) throw Error(ErrorCode::InvalidArgument, "null theta index must be 2, 3 or 4");
  if (tau.imag() >= kDirectFloor) return null_direct(k, tau);

  // tau = ts + shift: theta2 gains exp(pi i shift / 4); theta3 and theta4
  // swap when shift is odd.
  const double shift = std::nearbyint(tau.real());
  const cplx ts = tau - shift;
  const bool odd = std::fmod(std::abs(shift), 2.0) == 1.0;
  int ks = k;
  if (odd && k != 2) ks = (k == 3 ? 4 : 3);
  // Imaginary transformation: theta2 <-> theta4, theta3 <-> theta3.
  const int kt = ks == 2 ? 4 : (ks == 4 ? 2 : 3);
  const cplx w = -1.0 / ts;
  const NullThetaJet inner = null_theta_jet(kt, w);

  NullThetaJet jet;
  cplx pre = -0.5 * std::log(-I * ts);
  if (k == 2) pre += I * pi * std::fmod(shift, 8.0) / 4.0;
  jet.value = LogComplex::exp_of(pre) * inner.value;
  const cplx t2 = ts * ts;
  jet.dlog_tau = -0.5 / ts + inner.dlog_tau / t2;
  jet.d2log_tau = 0.5 / t2 + inner.d2log_tau / (t2 * t2) - 2.0 * inner.dlog_tau / (t2 * ts);
  return jet;
}

ThetaSpecials theta_specials(const Torus& torus) {
  ThetaSpecials sp;
  sp.th2_0 = null_theta_jet(2, torus.tau).value.value();
  sp.th3_0 = null_theta_jet(3, torus.tau).value.value();
  sp.th4_0 = null_theta_jet(4, torus.tau).value.value();
  const auto d = theta1_derivs(torus.tau);
  sp.th1p_0 = d[0];
  sp.th1ppp_0 = d[1];
  return sp;
}

BDerivatives log_null_theta_b_derivs(int k, double b) {
  const NullThetaJet jet = null_theta_jet(k, cplx(0.5, b));
  // d/db = i d/dtau on the line.
  return {-jet.dlog_tau.imag(), -jet.d2log_tau.real()};
}

BDerivatives log_theta1_b_derivs(double z, double b) {
  make_torus(cplx(0.5, b));
  const double zr = z - std::nearbyint(z);
  if (std::abs(std::abs(zr) - 0.5) < 1e-15) return log_null_theta_b_derivs(2, b);

  // theta1(z; 1/2 + ib) = 2 e^{pi i/8} sum (-1)^{n + A_n} e^{-pi b (n+1/2)^2} sin((2n+1) pi z).
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  int n = 0;
  for (; n < kMaxTerms; ++n) {
    const double e = (n + 0.5) * (n + 0.5) - 0.25;
    const long an = long(n) * (n + 1) / 2;
    const double sign = ((n + an) % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * std::exp(-pi * b * e) * std::sin((2.0 * n + 1.0) * pi * zr);
    if (n > 0 && -pi * b * e + 2.0 * std::log(1.0 + pi * e) < -kDrop) break;
    s0 += term;
    s1 += -pi * e * term;
    s2 += pi * pi * e * e * term;
  }
  if (n == kMaxTerms) throw Error(ErrorCode::Unconverged, "b-derivative series did not converge");
  if (s0 == 0.0) throw Error(ErrorCode::PoleAtLattice, "theta1 vanishes at this z");
  // The factor exp(-pi b / 4) contributes -pi/4 to the first derivative.
  const double d1 = s1 / s0 - pi / 4.0;
  const double d2 = s2 / s0 - (s1 / s0) * (s1 / s0);
  return {d1, d2};
}

}  // namespace tg

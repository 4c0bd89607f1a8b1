// log_complex.hpp
// A complex number kept as (log|w|, arg w). Theta and sigma values pick up
// factors like exp(-2 pi i n z) under lattice reduction, which overflow long
// before the underlying quantity is meaningless; multiplying in log space
// avoids that.

#pragma once

#include <complex>
#include <limits>

namespace tg {

using cplx = std::complex<double>;

struct LogComplex {
  double log_mag = 0.0;
  double arg = 0.0;

  static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
  static LogComplex from(cplx w);
  /// exp(w) without evaluating it.
  static LogComplex exp_of(cplx w) { return {w.real(), w.imag()}; }

  bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }

  /// Principal logarithm, arg wrapped to (-pi, pi].
  cplx log() const;
  /// Plain complex value. Throws std::overflow_error when |log_mag| >= 300.
  cplx value() const;
  double abs() const;

  LogComplex& operator*=(const LogComplex& o);
  LogComplex& operator/=(const LogComplex& o);
  LogComplex operator-() const;
  LogComplex conj() const { return {log_mag, -arg}; }
};

inline LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
inline LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

/// |a - b| / max(|a|, |b|), evaluated without leaving log space when the two
/// magnitudes are comparable.
double relative_difference(const LogComplex& a, const LogComplex& b);

}  // namespace tg

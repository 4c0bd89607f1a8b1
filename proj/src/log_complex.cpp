// log_complex.cpp

#include "torus_green/log_complex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tg {

namespace {

double wrap_arg(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

}  // namespace

LogComplex LogComplex::from(cplx w) {
  if (w == cplx(0.0, 0.0)) return zero();
  return {std::log(std::abs(w)), std::arg(w)};
}

cplx LogComplex::log() const { return {log_mag, wrap_arg(arg)}; }

cplx LogComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  if (std::abs(log_mag) >= 300.0) {
    throw std::overflow_error("LogComplex::value: magnitude outside exposable range");
  }
  return std::polar(std::exp(log_mag), arg);
}

double LogComplex::abs() const { return is_zero() ? 0.0 : std::exp(log_mag); }

LogComplex& LogComplex::operator*=(const LogComplex& o) {
  if (is_zero() || o.is_zero()) return *this = zero();
  log_mag += o.log_mag;
  arg = wrap_arg(arg + o.arg);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& o) {
  if (o.is_zero()) throw std::domain_error("LogComplex: division by zero");
  if (is_zero()) return *this;
  log_mag -= o.log_mag;
  arg = wrap_arg(arg - o.arg);
  return *this;
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return *this;
  return {log_mag, wrap_arg(arg + std::numbers::pi)};
}

double relative_difference(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return 1.0;
  // Scale both by the larger magnitude so the comparison happens near 1.
  const double ref = std::max(a.log_mag, b.log_mag);
  const cplx wa = std::polar(std::exp(a.log_mag - ref), a.arg);
  const cplx wb = std::polar(std::exp(b.log_mag - ref), b.arg);
  return std::abs(wa - wb);
}

}  // namespace tg

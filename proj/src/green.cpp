// green.cpp

#include "torus_green/green.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "torus_green/errors.hpp"
#include "torus_green/quadrature.hpp"

namespace tg {

namespace {

using std::numbers::pi;

struct Canonical {
  cplx z;
  LatticeCoords c;
};

Canonical canonical(cplx z, const Torus& torus) {
  const LatticeCoords c = wrap_point(z, torus);
  return {from_lattice(c, torus), c};
}

Theta1Jet checked_jet(cplx z, const Torus& torus) {
  Theta1Jet j = theta1_jet(z, torus.tau);
  if (j.value.is_zero()) throw Error(ErrorCode::PoleAtLattice, "Green function evaluated at a lattice point");
  return j;
}

Hessian2 hessian_from(cplx L2, double b) {
  Hessian2 h;
  h.xx = -L2.real() / (2.0 * pi);
  h.xy = L2.imag() / (2.0 * pi);
  h.yy = L2.real() / (2.0 * pi) + 1.0 / b;
  const double k = pi / b;
  h.det = -(std::norm(L2 + k) - k * k) / (4.0 * pi * pi);
  return h;
}

// Integral of log|a + v d| for v in [0, 1], the segment missing the origin.
double segment_log_integral(cplx a, cplx d) {
  // Rotate so the segment lies in Re w > 0, where the principal log is smooth.
  const double v0 = -(std::conj(d) * a).real() / std::norm(d);
  const cplx foot = a + v0 * d;
  const cplx rot = std::conj(foot) / std::abs(foot);
  const cplx ar = a * rot, dr = d * rot;
  auto prim = [&](cplx w) { return w * std::log(w) - w; };
  return ((prim(ar + dr) - prim(ar)) / dr).real();
}

}  // namespace

GreenFunction::GreenFunction(const Torus& torus) : w_(torus) {}

double GreenFunction::value_rel(cplx z) const {
  const Canonical c = canonical(z, torus());
  const LogComplex th = theta1(c.z, torus());
  if (th.is_zero()) throw Error(ErrorCode::PoleAtLattice, "Green function evaluated at a lattice point");
  const double y = c.z.imag();
  return -th.log_mag / (2.0 * pi) + y * y / (2.0 * torus().b);
}

GreenEval GreenFunction::eval(cplx z) const {
  const Canonical c = canonical(z, torus());
  const Theta1Jet j = checked_jet(c.z, torus());
  const double b = torus().b, y = c.z.imag();
  GreenEval e;
  e.value_rel = -j.value.log_mag / (2.0 * pi) + y * y / (2.0 * b);
  e.grad = {-j.d1.real() / (2.0 * pi), j.d1.imag() / (2.0 * pi) + y / b};
  e.hessian = hessian_from(j.d2, b);
  return e;
}

std::array<double, 2> GreenFunction::grad(cplx z) const { return eval(z).grad; }

Hessian2 GreenFunction::hessian(cplx z) const { return eval(z).hessian; }

std::array<double, 2> GreenFunction::grad_zeta(cplx z) const {
  const Canonical c = canonical(z, torus());
  const cplx W = inv().eta1 * c.c.t + inv().eta2 * c.c.s - w_.zeta(c.z);
  return {W.real() / (2.0 * pi), -W.imag() / (2.0 * pi)};
}

cplx GreenFunction::critical_residual(double t, double s) const {
  return w_.zeta(t + s * torus().tau) - t * inv().eta1 - s * inv().eta2;
}

PeriodIntegrals GreenFunction::period_integrals(cplx z) const {
  const cplx zt = w_.zeta(z);
  return {2.0 * (zt - inv().eta1 * z), 2.0 * (torus().tau * zt - inv().eta2 * z)};
}

double green_rel(cplx z, const Torus& torus) { return GreenFunction(torus).value_rel(z); }

std::array<double, 2> green_grad(cplx z, const Torus& torus) { return GreenFunction(torus).grad(z); }

Hessian2 green_hessian(cplx z, const Torus& torus) { return GreenFunction(torus).hessian(z); }

cplx critical_residual(double t, double s, const Torus& torus) {
  return GreenFunction(torus).critical_residual(t, s);
}

PeriodIntegrals period_integrals(cplx z, const Torus& torus) { return GreenFunction(torus).period_integrals(z); }

double cell_log_integral(cplx tau) {
  const cplx v[4] = {-0.5 - 0.5 * tau, 0.5 - 0.5 * tau, 0.5 + 0.5 * tau, -0.5 + 0.5 * tau};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const cplx a = v[k], d = v[(k + 1) % 4] - v[k];
    const double jac = std::abs((std::conj(a) * d).imag());
    total += jac * (-0.25 + 0.5 * segment_log_integral(a, d));
  }
  return total;
}

namespace {

// Integral over the cell of G_rel + (1/2pi) log|z|, which is smooth there.
double smooth_part_integral(const Torus& torus, int n) {
  const GaussRule g = gauss_legendre(n, -0.5, 0.5);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int k = 0; k < n; ++k) {
      const cplx z = g.nodes[k] + g.nodes[i] * torus.tau;
      const LogComplex th = theta1(z, torus);
      const double y = z.imag();
      row += g.weights[k] * ((std::log(std::abs(z)) - th.log_mag) / (2.0 * pi) + y * y / (2.0 * torus.b));
    }
    sum += g.weights[i] * row;
  }
  return sum * torus.b;
}

double constant_with(const Torus& torus, int n) {
  const double integral = smooth_part_integral(torus, n) - cell_log_integral(torus.tau) / (2.0 * pi);
  return -integral / torus.b;
}

}  // namespace

GreenConstant green_constant(const Torus& torus) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, GreenConstant> cache;
  const std::pair<double, double> key{torus.tau.real(), torus.tau.imag()};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double coarse = constant_with(torus, 128);
  const double fine = constant_with(torus, 256);
  GreenConstant c{fine, std::abs(fine - coarse)};
  if (c.error_estimate > 1e-8 * torus.b) {
    throw Error(ErrorCode::QuadratureNotConverged, "cell integral of G did not settle between 128 and 256 nodes");
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, c);
  return c;
}

}  // namespace tg

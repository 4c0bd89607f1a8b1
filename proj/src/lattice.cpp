// lattice.cpp

#include "torus_green/lattice.hpp"

#include <cmath>
#include <string>

#include "torus_green/errors.hpp"

namespace tg {

namespace {

constexpr double kBoundaryEps = 1e-14;

// Reduction to [-1/2, 1/2) robust against values a few ulps below 1/2.
double wrap_unit(double x, long* shift) {
  const double k = std::floor(x + 0.5);
  double r = x - k;
  if (r >= 0.5) {
    r -= 1.0;
    *shift = static_cast<long>(k) + 1;
  } else if (r < -0.5) {
    r += 1.0;
    *shift = static_cast<long>(k) - 1;
  } else {
    *shift = static_cast<long>(k);
  }
  return r;
}

}  // namespace

Torus make_torus(cplx tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw Error(ErrorCode::NonPositiveImaginaryPart,
                "modulus must satisfy Im tau > 0, got Im tau = " + std::to_string(tau.imag()));
  }
  return Torus{tau, tau.imag(), tau.imag()};
}

Modular Modular::compose(const Modular& inner) const {
  return Modular{a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                 c * inner.a + d * inner.c, c * inner.b + d * inner.d};
}

ReducedModulus reduce_modulus(cplx tau) {
  make_torus(tau);
  Modular m;
  cplx cur = tau;
  for (int iter = 0; iter < 10000; ++iter) {
    const long k = std::lround(cur.real());
    if (k != 0) {
      m = Modular{1, -k, 0, 1}.compose(m);
      cur -= double(k);
    }
    if (std::norm(cur) < 1.0 - kBoundaryEps) {
      m = Modular{0, -1, 1, 0}.compose(m);
      cur = -1.0 / cur;
    } else {
      break;
    }
  }
  // Tie-breaking on the boundary: Re tau = -1/2 goes to +1/2 and the left
  // half of the unit arc to the right half.
  if (std::abs(cur.real() + 0.5) <= kBoundaryEps) {
    m = Modular{1, 1, 0, 1}.compose(m);
    cur += 1.0;
  }
  if (cur.real() < -kBoundaryEps && std::abs(std::norm(cur) - 1.0) <= kBoundaryEps) {
    m = Modular{0, -1, 1, 0}.compose(m);
    cur = -1.0 / cur;
  }
  // Recompute from the matrix so output and transform agree exactly.
  return ReducedModulus{m.apply(tau), m};
}

LatticeCoords to_lattice(cplx z, const Torus& torus) {
  const double s = z.imag() / torus.b;
  const double t = z.real() - s * torus.tau.real();
  return {t, s};
}

cplx from_lattice(const LatticeCoords& c, const Torus& torus) { return c.t + c.s * torus.tau; }

WrappedPoint wrap_point_with_shift(cplx z, const Torus& torus) {
  const LatticeCoords raw = to_lattice(z, torus);
  WrappedPoint w;
  w.coords.s = wrap_unit(raw.s, &w.n);
  w.coords.t = wrap_unit(raw.t, &w.m);
  return w;
}

LatticeCoords wrap_point(cplx z, const Torus& torus) { return wrap_point_with_shift(z, torus).coords; }

double distance_to_lattice(cplx z, const Torus& torus) {
  // Search in a reduced basis, where the nearest lattice point of a wrapped
  // point is always one of the cell corners around the origin.
  const ReducedModulus red = reduce_modulus(torus.tau);
  const cplx scale = double(red.transform.c) * torus.tau + double(red.transform.d);
  const Torus reduced{red.tau, red.tau.imag(), red.tau.imag()};
  const LatticeCoords c = wrap_point(z / scale, reduced);
  double best = std::abs(from_lattice(c, reduced));
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dn = -1; dn <= 1; ++dn) {
      best = std::min(best, std::abs(from_lattice({c.t + dm, c.s + dn}, reduced)));
    }
  }
  return best * std::abs(scale);
}

std::array<cplx, 3> half_periods(const Torus& torus) {
  return {cplx(0.5, 0.0), 0.5 * torus.tau, 0.5 * (1.0 + torus.tau)};
}

}  // namespace tg

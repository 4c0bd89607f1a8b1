// lattice.hpp
// Tori C / (Z + Z tau) with Im tau > 0, the SL(2,Z) action on the modulus and
// reduction of points into the half-open cell [-1/2, 1/2)^2.

#pragma once

#include <array>
#include <complex>

#include "torus_green/log_complex.hpp"

namespace tg {

/// Flat torus normalised to periods 1 and tau. `b` and `area` are cached
/// copies of Im tau.
struct Torus {
  cplx tau;
  double b;
  double area;
};

/// Throws Error(NonPositiveImaginaryPart) unless Im tau > 0.
Torus make_torus(cplx tau);

/// Point t + s tau in lattice coordinates.
struct LatticeCoords {
  double t = 0.0;
  double s = 0.0;
};

/// Integer matrix [[a, b], [c, d]] acting as tau -> (a tau + b) / (c tau + d).
struct Modular {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  cplx apply(cplx tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
  /// Composition: (*this) after `inner`.
  Modular compose(const Modular& inner) const;
};

struct ReducedModulus {
  cplx tau;
  Modular transform;  ///< maps the input modulus to `tau`
};

/// Moves tau into the closed standard domain |Re tau| <= 1/2, |tau| >= 1.
/// Boundary points are sent to the half with Re tau >= 0.
ReducedModulus reduce_modulus(cplx tau);

/// Cartesian -> lattice coordinates, no wrapping.
LatticeCoords to_lattice(cplx z, const Torus& torus);
cplx from_lattice(const LatticeCoords& c, const Torus& torus);

/// Canonical representative: z = t + s tau (mod lattice) with
/// -1/2 <= t, s < 1/2. The half period (1 + tau)/2 maps to (-1/2, -1/2).
LatticeCoords wrap_point(cplx z, const Torus& torus);

/// Same as wrap_point, also reporting the integer shift (m, n) with
/// z = (t + m) + (s + n) tau.
struct WrappedPoint {
  LatticeCoords coords;
  long m = 0;
  long n = 0;
};
WrappedPoint wrap_point_with_shift(cplx z, const Torus& torus);

/// Distance on the torus between z and the nearest lattice point, measured in
/// the Euclidean metric of the cell.
double distance_to_lattice(cplx z, const Torus& torus);

/// Half periods 1/2, tau/2, (1 + tau)/2 in that order.
std::array<cplx, 3> half_periods(const Torus& torus);

}  // namespace tg

// quadrature.hpp
// Gauss-Legendre rules and straight-line contour integration.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "torus_green/log_complex.hpp"

namespace tg {

struct GaussRule {
  std::vector<double> nodes;    ///< on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes from Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Same rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Integral of f along the polyline through `path`, each segment split into
/// `pieces` equal parts with an n-point rule on each.
cplx integrate_path(const std::function<cplx(cplx)>& f, const std::vector<cplx>& path, int n = 32,
                    int pieces = 8);

}  // namespace tg

// moduli.hpp
// Dependence on the modulus: the degeneracy thresholds b0 < b1 of the half
// period 1/2 along tau = 1/2 + i b, the inequality checks for e1 + eta1 and
// theta3(0), the functional equation of f(b) = (log|theta1(1/2)|)_b, the
// lambda circle and grid scans counting critical points.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torus_green/critical.hpp"

namespace tg {

struct ThresholdReport {
  double b0 = 0.0, b1 = 0.0;
  double residual_b0 = 0.0;  ///< |e1 + eta1| at b0
  double residual_b1 = 0.0;  ///< |e1 + eta1 - 2 pi / b| at b1
  double bracket_width = 0.0;
  double e2_over_e1_sq_at_b1 = 0.0;  ///< |e2 / e1|^2 at b1
  double tol = 0.0;
};

/// e1 + eta1 on tau = 1/2 + i b (real there).
double e1_plus_eta1(double b);

/// Bisection on [0.05, 2] for the roots of e1 + eta1 and e1 + eta1 - 2 pi / b,
/// closed by one regula falsi step. Throws BracketFailure.
ThresholdReport thresholds(double tol = 1e-12);

struct InequalityRow {
  double b = 0.0;
  double theta2_bb = 0.0;          ///< (log|theta2(0)|)_bb
  double de1eta1_db = 0.0;         ///< d(e1 + eta1)/db by finite differences
  double theta3_b = 0.0;           ///< (log|theta3(0)|)_b
  double theta3_bb = 0.0;
  double half_e1_minus_eta1 = 0.0;
  double bridge1_gap = 0.0;  ///< |-4 pi theta2_bb - de1eta1_db| / max(1, |de1eta1_db|)
  double bridge2_gap = 0.0;  ///< |4 pi theta3_b - (e1/2 - eta1)|
  double gxx = 0.0, gyy = 0.0;  ///< Hessian of G at 1/2
};

struct InequalityViolation {
  double b = 0.0;
  std::string what;
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  std::vector<InequalityViolation> violations;
  double bridge1_tol = 1e-6;
  double bridge2_tol = 1e-9;
};

InequalityReport verify_fundamental_inequalities(const std::vector<double>& b_grid);

/// f(b) = (log|theta1(1/2; 1/2 + i b)|)_b.
double f_of_b(double b);

/// |f(1/(4b)) + 2b + 4b^2 f(b)|.
double functional_equation_residual(double b);

/// ||lambda(tau) - 1| - 1|.
double lambda_circle_residual(cplx tau);

struct Region {
  double re0 = -0.5, im0 = 0.25, re1 = 0.5, im1 = 2.0;
};

struct ScanCell {
  cplx tau;
  int count = 0;                        ///< 0 when the cell failed
  std::optional<LatticeCoords> extra_point;
  int min_half_period = 0;              ///< 1..3 when count is 3 and one half period is the minimum
  std::string error;                    ///< empty on success
  double wall_clock = 0.0;              ///< seconds; never serialised
};

/// Edge between neighbouring nodes whose counts differ.
struct CountFlip {
  cplx midpoint;
  int count_a = 0, count_b = 0;
  int degenerating_half_period = 0;  ///< the minimum on the count-3 side
};

struct ScanResult {
  Region region;
  int nx = 0, ny = 0;
  std::vector<ScanCell> cells;  ///< row-major, rows of constant Im tau
  std::vector<CountFlip> flips;
  double tol = 1e-11;

  const ScanCell& at(int i, int j) const { return cells[size_t(j) * size_t(nx) + size_t(i)]; }
};

/// Node grid with inclusive endpoints: tau_ij = re0 + i dre + (im0 + j dim) i.
cplx scan_node(const Region& r, int nx, int ny, int i, int j);

/// One OpenMP task per grid row.
ScanResult scan(const Region& region, int nx, int ny, double tol = 1e-11);
/// Same cells computed on the calling thread only.
ScanResult scan_serial(const Region& region, int nx, int ny, double tol = 1e-11);

}  // namespace tg

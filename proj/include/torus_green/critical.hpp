// critical.hpp
// Critical points of the torus Green function: multi-start Newton search,
// Morse classification, the comparison of G at the half periods and the
// extra critical point on the rhombic line Re tau = 1/2.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torus_green/green.hpp"

namespace tg {

enum class PointKind { HalfPeriod1, HalfPeriod2, HalfPeriod3, ExtraPair };
enum class MorseClass { Min, Saddle, Degenerate };

const char* to_string(PointKind k);
const char* to_string(MorseClass m);

struct CriticalPoint {
  LatticeCoords coords;
  cplx z;
  PointKind kind = PointKind::ExtraPair;
  MorseClass morse = MorseClass::Degenerate;
  Hessian2 hessian;
  double g_rel = 0.0;
  double grad_norm = 0.0;
};

struct CriticalSet {
  std::vector<CriticalPoint> points;  ///< three half periods, then extra representatives
  int total_count = 0;                ///< both members of an extra pair counted
  int seeds = 0;
  int failed_seeds = 0;
  bool verified_fine = false;  ///< the 48x48 verification sweep was run
};

struct CriticalOptions {
  double tol = 1e-11;          ///< gradient norm accepted as critical
  int grid = 24;               ///< seeds per lattice direction
  int verify_grid = 48;
  double exclusion_radius = 0.05;
  double dedup_tol = 1e-8;
  double degeneracy_eps = 1e-9;
  int max_iter = 200;
};

/// Throws CountViolation if more than five distinct points survive, and
/// NoConvergence if seeds fail and the two seed grids disagree.
CriticalSet find_critical_points(const Torus& torus, const CriticalOptions& opt);
CriticalSet find_critical_points(const Torus& torus, double tol = 1e-11);

/// Min if det > eps / b^2 and G_xx > 0, Saddle if det < -eps / b^2.
MorseClass classify(const Hessian2& h, double b, double degeneracy_eps = 1e-9);
MorseClass classify(const CriticalPoint& p, double b, double degeneracy_eps = 1e-9);

/// Newton on grad G from `z0`; returns nullopt if it fails to reach `tol`.
std::optional<cplx> refine_critical_point(const GreenFunction& g, cplx z0, double tol, int max_iter = 200);

enum class Order3 { Less, Tie, Greater };

/// Pairwise comparison of G at the half periods, index pairs (1,2), (1,3),
/// (2,3), each computed three ways.
struct HalfPeriodComparison {
  std::array<double, 3> g_rel{};       ///< G - C at 1/2, tau/2, (1 + tau)/2
  std::array<double, 3> direct{};      ///< G_i - G_j from the values
  std::array<double, 3> log_ratio{};   ///< the same from log|e_i - e_k| / |e_j - e_k| / (8 pi)
  std::array<double, 3> abs_wp_log{};  ///< log|e_i| - log|e_j|
  std::array<Order3, 3> order{};
  double max_formula_gap = 0.0;
  double tie_tol = 1e-9;
  bool consistent = true;
};

/// Throws InconsistentComparison unless the three routes agree.
HalfPeriodComparison compare_half_periods(const Torus& torus, double tie_tol = 1e-9);

/// Sign of (e1 + eta1)(e1 + eta1 - 2 pi / b) at tau = 1/2 + i b; positive
/// exactly when the half period 1/2 is a saddle and the extra pair exists.
double extra_regime_indicator(double b);

struct RhombicExtraPoint {
  CriticalPoint point;
  std::string locus;  ///< "re_z_half", "real_axis" or "cell"
};

/// The extra critical point for tau = 1/2 + i b with b outside [b0, b1].
/// Throws NotInExtraRegime otherwise.
RhombicExtraPoint locate_z0_on_rhombus_line(double b, double tol = 1e-12);

}  // namespace tg

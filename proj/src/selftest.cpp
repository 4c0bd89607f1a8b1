// selftest.cpp

#include "torus_green/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "torus_green/theta.hpp"

namespace tg {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void check(SelftestReport& rep, const std::string& name, double tol, const std::function<double()>& measure) {
  json row{{"name", name}, {"tol", tol}};
  try {
    const double v = measure();
    row["value"] = v;
    row["pass"] = std::isfinite(v) && v <= tol;
  } catch (const std::exception& e) {
    row["value"] = nullptr;
    row["error"] = e.what();
    row["pass"] = false;
  }
  if (!row["pass"].get<bool>()) ++rep.failures;
  rep.checks.push_back(row);
}

}  // namespace

SelftestReport run_selftest() {
  SelftestReport rep;
  const Torus gen = make_torus({0.3, 1.1});
  const Torus square = make_torus(I);
  const Torus hex = make_torus(std::exp(I * (pi / 3.0)));
  const cplx z{0.17, 0.21};

  check(rep, "theta1 quasi-periodicity in tau", 1e-12, [&] {
    const LogComplex lhs = theta1(z + gen.tau, gen);
    const LogComplex rhs = -(LogComplex::exp_of(-I * pi * gen.tau - 2.0 * pi * I * z) * theta1(z, gen));
    return relative_difference(lhs, rhs);
  });
  check(rep, "theta1 direct series vs imaginary transformation", 1e-12,
        [&] { return relative_difference(theta1_direct(z, gen.tau), jacobi_imaginary(z, gen.tau)); });
  check(rep, "Legendre relation", 1e-12, [&] {
    const EllipticInvariants v = invariants(gen);
    return std::abs(v.eta1 * gen.tau - v.eta2 - 2.0 * pi * I);
  });
  check(rep, "lambda(i) = 1/2", 1e-12, [&] { return std::abs(invariants(square).lambda - 0.5); });
  check(rep, "g2 vanishes on the hexagonal torus", 1e-10, [&] { return std::abs(invariants(hex).g2); });
  check(rep, "Laplacian of G equals 1/b", 1e-10, [&] {
    const GreenFunction g(gen);
    return std::abs(g.hessian(z).trace() - 1.0 / gen.b);
  });
  check(rep, "G periodic under z -> z + tau", 1e-12, [&] {
    const GreenFunction g(gen);
    return std::abs(g.value_rel(z + gen.tau) - g.value_rel(z));
  });
  check(rep, "three critical points on the square torus", 0.0,
        [&] { return std::abs(find_critical_points(square).total_count - 3.0); });
  check(rep, "five critical points on the hexagonal torus", 0.0,
        [&] { return std::abs(find_critical_points(hex).total_count - 5.0); });
  check(rep, "half-period comparison routes agree", 1e-9,
        [&] { return compare_half_periods(gen).max_formula_gap; });
  check(rep, "functional equation at b = 0.8", 1e-12, [] { return functional_equation_residual(0.8); });
  check(rep, "8pi solution residual on the hexagonal torus", 1e-5, [&] {
    return verify_solution(solution_8pi(hex), 32, 0.05).max_residual;
  });
  check(rep, "4pi solution mass", 1e-8, [&] { return std::abs(mass(solution_4pi(square), 128) - 1.0); });
  return rep;
}

}  // namespace tg

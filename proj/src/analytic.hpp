// Closed-form reference fields: the bounded gradient-blow-up example
// u = x / sqrt(kappa(1-t) + |x|^2), a manufactured solution with exact
// forcing, and convergence-study drivers for the solver.
#pragma once

#include <array>
#include <functional>
#include <span>

#include "model.hpp"
#include "monitors.hpp"
#include "solver.hpp"

namespace pqlab {

struct AnalyticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// u(t,x) = x / sqrt(kappa(1-t) + |x|^2), kappa in (0,4), d = N = 3.
/// Defined for t in [0,1) on the closed unit ball, and at t = 1 for x != 0.
struct JohnStaraField {
  double kappa;
  explicit JohnStaraField(double k);
  std::array<double, 3> value(double t, const std::array<double, 3>& x) const;
};

std::array<double, 3> john_stara_field(double kappa, double t, const std::array<double, 3>& x);

/// First component along the e1 axis, s in [-1, 1].
double john_stara_trace(double kappa, double t, double s);

/// Modulus-of-continuity table of the e1-axis trace by pair maximization on a
/// uniform grid (default 10^4 intervals over [-1, 1]).
PrecompactnessProxy js_modulus_profile(double kappa, std::span<const double> deltas,
                                       std::span<const double> times, int grid_points = 10001);

/// Manufactured case: exact per-component solution and the forcing that the
/// model's reaction reproduces along it.
struct ManufacturedCase {
  std::shared_ptr<const CoefficientModel> model;
  std::function<double(double t, double x)> exact;    // same for every component
  std::function<double(double t, double x)> forcing;  // g evaluated on the exact solution
};

/// u* = exp(-t) sin(pi x) per component, A = I, phi = 0,
/// g_a = (pi^2 - 1) u_a, homogeneous Dirichlet walls on [0, 1].
ManufacturedCase shipped_mms_case();

double mms_forcing(const ManufacturedCase& c, double t, double x);

struct ConvergenceReport {
  std::vector<double> h;       // dx or dt per run
  std::vector<double> errors;  // sup-norm error at final time
  double order = 0.0;          // least-squares slope in log-log
  bool monotone = false;
};

ConvergenceReport convergence_study_spatial(const ManufacturedCase& c, std::span<const int> ns,
                                            double dt, double T);
ConvergenceReport convergence_study_temporal(const ManufacturedCase& c,
                                             std::span<const double> dts, int n, double T);

}  // namespace pqlab

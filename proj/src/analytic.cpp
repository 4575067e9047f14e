#include "analytic.hpp"

#include <cmath>
#include <numbers>

namespace pqlab {

JohnStaraField::JohnStaraField(double k) : kappa(k) {
  if (!(k > 0.0) || !(k < 4.0)) throw AnalyticError("kappa must lie in (0, 4)");
}

std::array<double, 3> JohnStaraField::value(double t, const std::array<double, 3>& x) const {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double den = kappa * (1.0 - t) + r2;
  if (!(den > 0.0))
    throw AnalyticError("field undefined at (t, x) = (1, 0)");
  const double inv = 1.0 / std::sqrt(den);
  return {x[0] * inv, x[1] * inv, x[2] * inv};
}

std::array<double, 3> john_stara_field(double kappa, double t, const std::array<double, 3>& x) {
  return JohnStaraField(kappa).value(t, x);
}

double john_stara_trace(double kappa, double t, double s) {
  const double den = kappa * (1.0 - t) + s * s;
  if (!(den > 0.0)) throw AnalyticError("trace undefined at (t, s) = (1, 0)");
  return s / std::sqrt(den);
}

PrecompactnessProxy js_modulus_profile(double kappa, std::span<const double> deltas,
                                       std::span<const double> times, int grid_points) {
  JohnStaraField field(kappa);  // validates kappa
  if (grid_points < 2) throw AnalyticError("js_modulus_profile needs at least 2 grid points");
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i)
    xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * static_cast<double>(i) / (grid_points - 1);

  PrecompactnessProxy proxy;
  proxy.deltas.assign(deltas.begin(), deltas.end());
  std::vector<double> vals(static_cast<std::size_t>(grid_points));
  for (double t : times) {
    if (!(t >= 0.0) || !(t < 1.0))
      throw AnalyticError("profile times must lie in [0, 1)");
    for (int i = 0; i < grid_points; ++i)
      vals[static_cast<std::size_t>(i)] = john_stara_trace(kappa, t, xs[static_cast<std::size_t>(i)]);
    proxy.times.push_back(t);
    std::vector<double> row;
    row.reserve(deltas.size());
    for (double d : deltas) row.push_back(modulus_scalar(xs, vals, d));
    proxy.omega.push_back(std::move(row));
  }
  return proxy;
}

ManufacturedCase shipped_mms_case() {
  const double pi = std::numbers::pi;
  ManufacturedCase c;
  c.model = model_from_catalog("mms_sine");
  c.exact = [pi](double t, double x) { return std::exp(-t) * std::sin(pi * x); };
  c.forcing = [pi](double t, double x) {
    return (pi * pi - 1.0) * std::exp(-t) * std::sin(pi * x);
  };
  return c;
}

double mms_forcing(const ManufacturedCase& c, double t, double x) { return c.forcing(t, x); }

namespace {

double mms_run_error(const ManufacturedCase& c, int n, double dt, double T) {
  Problem p;
  p.model = c.model;
  p.grid = Grid1D(n, 0.0, 1.0);
  p.bc = BoundarySpec::all(2, DirichletBC{constant_fn(0.0)});

  StateField u0(n, 2, 0.0);
  for (int i = 0; i < n; ++i) {
    double v = c.exact(0.0, p.grid.center(i));
    u0.at(i, 0) = v;
    u0.at(i, 1) = v;
  }

  TimeController tc;
  tc.dt_init = tc.dt_min = tc.dt_max = dt;
  RunResult res = solve(p, u0, T, tc);
  if (res.status != RunStatus::Completed)
    throw AnalyticError("manufactured run failed: " + res.message);

  const StateField& uT = res.final_state();
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    double ex = c.exact(uT.t, p.grid.center(i));
    err = std::max(err, std::fabs(uT.at(i, 0) - ex));
    err = std::max(err, std::fabs(uT.at(i, 1) - ex));
  }
  return err;
}

ConvergenceReport finish_report(std::vector<double> h, std::vector<double> errors) {
  ConvergenceReport rep;
  rep.h = std::move(h);
  rep.errors = std::move(errors);
  // least-squares slope of log(err) against log(h)
  const std::size_t m = rep.h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double lx = std::log(rep.h[i]), ly = std::log(rep.errors[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  rep.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (rep.errors[i + 1] >= rep.errors[i]) rep.monotone = false;
  return rep;
}

}  // namespace

ConvergenceReport convergence_study_spatial(const ManufacturedCase& c, std::span<const int> ns,
                                            double dt, double T) {
  if (ns.size() < 2) throw AnalyticError("spatial study needs at least 2 grids");
  std::vector<double> h, errors;
  for (int n : ns) {
    h.push_back(1.0 / n);
    errors.push_back(mms_run_error(c, n, dt, T));
  }
  return finish_report(std::move(h), std::move(errors));
}

ConvergenceReport convergence_study_temporal(const ManufacturedCase& c,
                                             std::span<const double> dts, int n, double T) {
  if (dts.size() < 2) throw AnalyticError("temporal study needs at least 2 step sizes");
  std::vector<double> h, errors;
  for (double dt : dts) {
    h.push_back(dt);
    errors.push_back(mms_run_error(c, n, dt, T));
  }
  return finish_report(std::move(h), std::move(errors));
}

}  // namespace pqlab

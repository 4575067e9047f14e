// 1D cell grid, discrete state, and per-component boundary conditions.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "regularize.hpp"

namespace pqlab {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Grid1D {
  int n = 0;
  double x_min = 0.0, x_max = 1.0;

  Grid1D() = default;
  Grid1D(int cells, double lo, double hi) : n(cells), x_min(lo), x_max(hi) {
    if (n < 4) throw GridError("grid needs at least 4 cells");
    if (!(x_max > x_min)) throw GridError("grid needs x_max > x_min");
  }

  double dx() const { return (x_max - x_min) / n; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  double face(int i) const { return x_min + i * dx(); }  // i in [0, n]
  double measure() const { return x_max - x_min; }
};

/// Cell-average state u(t, .): values[i*N + a].
struct StateField {
  double t = 0.0;
  int n = 0, N = 0;
  std::vector<double> values;

  StateField() = default;
  StateField(int cells, int components, double time = 0.0)
      : t(time), n(cells), N(components),
        values(static_cast<std::size_t>(cells) * components, 0.0) {}

  double& at(int i, int a) { return values[static_cast<std::size_t>(i) * N + a]; }
  double at(int i, int a) const { return values[static_cast<std::size_t>(i) * N + a]; }

  bool finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

using TimeFn = std::function<double(double)>;

inline TimeFn constant_fn(double v) {
  return [v](double) { return v; };
}

// Per-side, per-component boundary conditions. PrescribedFlux carries the
// co-normal flux value f.n; RobinEps carries the raw (unsqueezed) datum, the
// squeeze is applied where the condition is evaluated.
struct DirichletBC { TimeFn value; };
struct ZeroFluxBC {};
struct PrescribedFluxBC { TimeFn conormal; };
struct RobinEpsBC {
  EpsilonScheme scheme;
  TimeFn datum;
};

using BoundaryCondition = std::variant<DirichletBC, ZeroFluxBC, PrescribedFluxBC, RobinEpsBC>;

enum class Side { Left = 0, Right = 1 };

struct BoundarySpec {
  // conditions[side][alpha]
  std::array<std::vector<BoundaryCondition>, 2> conditions;

  static BoundarySpec all(int N, const BoundaryCondition& bc) {
    BoundarySpec s;
    s.conditions[0].assign(static_cast<std::size_t>(N), bc);
    s.conditions[1].assign(static_cast<std::size_t>(N), bc);
    return s;
  }
  const BoundaryCondition& at(Side s, int a) const {
    return conditions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
  }
  int components() const { return static_cast<int>(conditions[0].size()); }
};

}  // namespace pqlab

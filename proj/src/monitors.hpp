// A-priori quantities tracked along a run: simplex containment, energy,
// gradient integrals, Hoelder seminorms, moduli of continuity, mass, and the
// blow-up suspicion policy.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "solver.hpp"

namespace pqlab {

/// max over cells and h of G_h(u), G = {-u1, -u2, u1+u2-1}; <= 0 means the
/// state is inside the closed simplex. Exact given cell values. N = 2.
double invariant_violation(const StateField& s);

/// sum_i u_{i,a} dx (compensated summation).
double mass_total(const StateField& s, const Grid1D& g, int alpha);

/// max over cell pairs of |u_i - u_j| / |x_i - x_j|^gamma, componentwise max.
/// With time_weight_r, multiplied by t^{(gamma - r)/2}. Pair scans above 4096
/// cells subsample with a stride.
double holder_seminorm(const StateField& s, const Grid1D& g, double gamma,
                       std::optional<double> time_weight_r = {});

/// max |u_i - u_j| over pairs with |x_i - x_j| <= delta (componentwise max).
double modulus_of_continuity(const StateField& s, const Grid1D& g, double delta);

/// scalar versions on explicit sample points
double holder_seminorm_scalar(std::span<const double> x, std::span<const double> v, double gamma);
double modulus_scalar(std::span<const double> x, std::span<const double> v, double delta);

struct EnergyReport {
  double sup_l2 = 0.0;                // max_t ||u(t)||_2
  double dissipation_integral = 0.0;  // integral of ||grad u||_2^2 over time
  double lhs = 0.0;                   // sup ||u||^2 + lambda0 * dissipation
  double rhs = 0.0;                   // 2*C1*T + ||u(t0)||_2^2
  double c1 = 0.0;
  bool bound_pass = false;
};

/// Energy monitor of the L2 identity: trapezoidal in time, central
/// differences in space (one-sided at the walls). Needs >= 2 snapshots.
EnergyReport energy_v102(std::span<const SnapshotRecord> snaps, const Grid1D& g, double lambda0,
                         double c1);

/// C1 = |Omega| (sup_{x,u} sum_a |phi_a|^2 / (2 lambda0) + sum_a sup|g_a| sup|u_a|)
/// with sups taken over the model's domain box by dense sampling.
double energy_c1_from_model(const CoefficientModel& m, double lambda0, double omega_measure,
                            int x_samples = 32, int u_samples = 64);

struct GradLpReport {
  double total = 0.0;
  std::vector<double> times;    // snapshot times
  std::vector<double> partial;  // running time integral
  bool bounded = false;         // tail growth rate clearly below the head rate
};

/// Time integral of int |d_x u_alpha|^p dx over the snapshot window.
GradLpReport grad_lp(std::span<const SnapshotRecord> snaps, const Grid1D& g, int alpha, int p);

struct BlowupPolicy {
  double factor = 10.0;
  int window = 16;
};

enum class BlowupVerdict { Completed, BlowupSuspected };

/// Suspect blow-up when the watched series grows monotonically by more than
/// policy.factor over the lookback window, or contains a non-finite value.
BlowupVerdict blowup_status(std::span<const double> series, const BlowupPolicy& policy);

/// Modulus-of-continuity table over snapshots with t >= t_min.
struct PrecompactnessProxy {
  std::vector<double> deltas;
  std::vector<double> times;
  std::vector<std::vector<double>> omega;  // omega[time][delta]
};
PrecompactnessProxy modulus_table(std::span<const SnapshotRecord> snaps, const Grid1D& g,
                                  std::span<const double> deltas, double t_min = 0.0);

}  // namespace pqlab

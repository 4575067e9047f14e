// Conservative finite-volume discretization of
//   d_t u_a + d_x( phi_a(x,u) - A_ab(x,u) d_x u_b ) = g_a(x,u)
// on a 1D interval, advanced by implicit Euler with Newton iteration and a
// block-tridiagonal finite-difference Jacobian.
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "model.hpp"

namespace pqlab {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::shared_ptr<const CoefficientModel> model;
  Grid1D grid;
  BoundarySpec bc;
  bool upwind = false;  // first-order upwinding of phi at interior faces
};

struct TimeController {
  double dt_init = 1e-3;
  double dt_min = 1e-9;
  double dt_max = 1e-1;
  double newton_tol = 1e-10;   // residual sup-norm
  int newton_max_iters = 25;
  double growth = 2.0;
  double shrink = 0.5;
  // One extra Newton update after the tolerance is met, pushing residuals to
  // the rounding floor; keeps long conservation runs drift-free.
  bool newton_polish = true;
};

enum class RunStatus { Completed, NewtonFailure, BlowupSuspected };
const char* to_string(RunStatus s);

struct SnapshotRecord {
  double t = 0.0;
  StateField state;
  double dt_seed = 0.0;  // nominal step size a resumed run starts with
};

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::vector<SnapshotRecord> snapshots;
  std::vector<double> accepted_times;  // time at the END of each accepted step
  std::vector<double> accepted_dts;
  std::string message;

  const StateField& final_state() const { return snapshots.back().state; }
};

enum class StepAction { Continue, StopBlowup };
using StepCallback = std::function<StepAction(const StateField&, double dt)>;

struct SolveOptions {
  double snapshot_cadence = 0.0;  // time between snapshots; 0 = first/last only
  double dt_seed = 0.0;           // overrides dt_init when > 0 (restart)
};

/// Per-component face flux F_a = phi_a(x, ubar) - A_ab(x, ubar)(uR_b - uL_b)/dx
/// with ubar the arithmetic average; with upwinding, phi_a is evaluated at the
/// upwind cell state chosen by the sign of dphi_a/du_a at ubar.
void face_flux(const CoefficientModel& m, double x_face, std::span<const double> uL,
               std::span<const double> uR, double dx, bool upwind, std::span<double> out);

/// Backward-Euler residual R_{i,a} = (u - u_prev)/dt + (F_{i+1/2}-F_{i-1/2})/dx - g_a.
/// Boundary faces follow the BoundarySpec: flux-type conditions set the face
/// flux directly; Dirichlet uses a linear ghost (2*datum - interior) so the
/// face-interpolated state equals the datum. Data are read at state.t.
void residual(const Problem& p, const StateField& state, const StateField& prev, double dt,
              std::vector<double>& out);

struct StepResult {
  bool ok = false;
  StateField state;
  double dt_used = 0.0;
  int newton_iters = 0;
};

/// One adaptive implicit-Euler step: Newton at trial dt, halving on failure
/// down to dt_min. Never returns a non-finite state.
StepResult advance(const Problem& p, const StateField& state, double dt_trial,
                   const TimeController& tc);

/// Integrate to T. Snapshot times (cadence multiples and T itself) are hit
/// exactly; the adaptive sequence is deterministic, so identical inputs give
/// bit-identical results. The callback runs after every accepted step.
RunResult solve(const Problem& p, const StateField& u0, double T, const TimeController& tc,
                const SolveOptions& opt = {}, const StepCallback& on_step = {});

/// Resume from snapshot k with the recorded dt seed; a split-and-restart run
/// reproduces the uninterrupted run bit for bit.
RunResult restart_from_snapshot(const Problem& p, const RunResult& prior, int k, double T,
                                const TimeController& tc, const SolveOptions& opt = {},
                                const StepCallback& on_step = {});

}  // namespace pqlab

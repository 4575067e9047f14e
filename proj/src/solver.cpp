#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace pqlab {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::NewtonFailure: return "newton_failure";
    case RunStatus::BlowupSuspected: return "blowup_suspected";
  }
  return "?";
}

namespace {

// ---- small dense LU with partial pivoting -------------------------------

bool lu_factor(double* a, int n, int* piv) {
  for (int col = 0; col < n; ++col) {
    int p = col;
    double best = std::fabs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) { best = v; p = r; }
    }
    if (!(best > 0.0) || !std::isfinite(best)) return false;
    piv[col] = p;
    if (p != col)
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[p * n + c]);
    double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] * inv;
      a[r * n + col] = f;
      for (int c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return true;
}

void lu_solve(const double* a, int n, const int* piv, double* b) {
  for (int col = 0; col < n; ++col) {
    if (piv[col] != col) std::swap(b[col], b[piv[col]]);
    for (int r = col + 1; r < n; ++r) b[r] -= a[r * n + col] * b[col];
  }
  for (int r = n - 1; r >= 0; --r) {
    for (int c = r + 1; c < n; ++c) b[r] -= a[r * n + c] * b[c];
    b[r] /= a[r * n + r];
  }
}

// C = C - A*B for N x N row-major blocks
void gemm_sub(double* c, const double* a, const double* b, int n) {
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] -= aik * b[k * n + j];
    }
}

// y = y - A*x for an N-vector
void gemv_sub(double* y, const double* a, const double* x, int n) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a[i * n + j] * x[j];
    y[i] -= s;
  }
}

// ---- residual assembly ---------------------------------------------------

struct Scratch {
  std::vector<double> avg, A, phi, phi_up, dphi, g, ghost, robin, target;
  std::vector<double> F;  // (n+1)*N face fluxes
  void init(int n, int N, int a_size, int phi_size) {
    avg.resize(static_cast<std::size_t>(N));
    A.resize(static_cast<std::size_t>(a_size));
    phi.resize(static_cast<std::size_t>(phi_size));
    phi_up.resize(static_cast<std::size_t>(phi_size));
    dphi.resize(static_cast<std::size_t>(phi_size * N));
    g.resize(static_cast<std::size_t>(N));
    ghost.resize(static_cast<std::size_t>(N));
    robin.resize(static_cast<std::size_t>(N));
    target.resize(static_cast<std::size_t>(N));
    F.resize(static_cast<std::size_t>(n + 1) * N);
  }
};

void face_flux_impl(const CoefficientModel& m, double x_face, std::span<const double> uL,
                    std::span<const double> uR, double dx, bool upwind, std::span<double> out,
                    Scratch& s) {
  const int N = m.components();
  const std::array<double, 1> x{x_face};
  for (int a = 0; a < N; ++a)
    s.avg[static_cast<std::size_t>(a)] =
        0.5 * (uL[static_cast<std::size_t>(a)] + uR[static_cast<std::size_t>(a)]);
  m.diffusion(x, s.avg, s.A);
  m.convection(x, s.avg, s.phi);
  if (upwind) m.convection_du(x, s.avg, s.dphi);

  for (int a = 0; a < N; ++a) {
    double conv = s.phi[static_cast<std::size_t>(a)];
    if (upwind) {
      // characteristic direction from dphi_a/du_a at the face average
      double speed = s.dphi[static_cast<std::size_t>(m.phi_index(a, 0) * N + a)];
      m.convection(x, speed >= 0.0 ? uL : uR, s.phi_up);
      conv = s.phi_up[static_cast<std::size_t>(a)];
    }
    double diff = 0.0;
    for (int b = 0; b < N; ++b)
      diff += s.A[static_cast<std::size_t>(m.a_index(a, b, 0, 0))] *
              (uR[static_cast<std::size_t>(b)] - uL[static_cast<std::size_t>(b)]) / dx;
    out[static_cast<std::size_t>(a)] = conv - diff;
  }
}

// One boundary face. n_sign = -1 left, +1 right. Fluxes are stored in the +x
// direction, so a prescribed co-normal value q maps to F = n_sign * q.
void boundary_face_flux(const Problem& p, const StateField& state, double t, Side side,
                        std::span<double> out, Scratch& s) {
  const CoefficientModel& m = *p.model;
  const int N = m.components();
  const bool left = side == Side::Left;
  const double n_sign = left ? -1.0 : 1.0;
  const double x_face = left ? p.grid.x_min : p.grid.x_max;
  const int cell = left ? 0 : state.n - 1;
  const double* u_int = &state.values[static_cast<std::size_t>(cell) * N];
  std::span<const double> u_cell(u_int, static_cast<std::size_t>(N));

  // ghost state: Dirichlet components extrapolate through the datum, the
  // rest copy the interior value (only read for the Dirichlet rows)
  bool any_dirichlet = false;
  for (int a = 0; a < N; ++a) {
    const BoundaryCondition& bc = p.bc.at(side, a);
    if (const auto* dir = std::get_if<DirichletBC>(&bc)) {
      s.ghost[static_cast<std::size_t>(a)] = 2.0 * dir->value(t) - u_cell[static_cast<std::size_t>(a)];
      any_dirichlet = true;
    } else {
      s.ghost[static_cast<std::size_t>(a)] = u_cell[static_cast<std::size_t>(a)];
    }
  }
  std::vector<double> numeric(static_cast<std::size_t>(N), 0.0);
  if (any_dirichlet) {
    if (left)
      face_flux_impl(m, x_face, s.ghost, u_cell, p.grid.dx(), false, numeric, s);
    else
      face_flux_impl(m, x_face, u_cell, s.ghost, p.grid.dx(), false, numeric, s);
  }

  for (int a = 0; a < N; ++a) {
    const BoundaryCondition& bc = p.bc.at(side, a);
    if (std::holds_alternative<DirichletBC>(bc)) {
      out[static_cast<std::size_t>(a)] = numeric[static_cast<std::size_t>(a)];
    } else if (std::holds_alternative<ZeroFluxBC>(bc)) {
      out[static_cast<std::size_t>(a)] = 0.0;
    } else if (const auto* pf = std::get_if<PrescribedFluxBC>(&bc)) {
      out[static_cast<std::size_t>(a)] = n_sign * pf->conormal(t);
    } else {
      const auto& rb = std::get<RobinEpsBC>(bc);
      // squeezed datum, then the epsilon Robin co-normal flux at the wall cell
      for (int b = 0; b < N; ++b)
        s.target[static_cast<std::size_t>(b)] = transform_value(rb.scheme, rb.datum(t));
      const std::array<double, 1> xf{x_face};
      const std::array<double, 1> nrm{n_sign};
      robin_flux(rb.scheme, m, xf, nrm, u_cell, s.target, s.robin);
      out[static_cast<std::size_t>(a)] = n_sign * s.robin[static_cast<std::size_t>(a)];
    }
  }
}

void residual_impl(const Problem& p, const StateField& state, const StateField& prev, double dt,
                   std::vector<double>& out, Scratch& s) {
  const CoefficientModel& m = *p.model;
  const int n = state.n, N = state.N;
  const double dx = p.grid.dx();
  out.resize(static_cast<std::size_t>(n) * N);

  boundary_face_flux(p, state, state.t, Side::Left,
                     std::span<double>(&s.F[0], static_cast<std::size_t>(N)), s);
  for (int f = 1; f < n; ++f) {
    std::span<const double> uL(&state.values[static_cast<std::size_t>(f - 1) * N],
                               static_cast<std::size_t>(N));
    std::span<const double> uR(&state.values[static_cast<std::size_t>(f) * N],
                               static_cast<std::size_t>(N));
    face_flux_impl(m, p.grid.face(f), uL, uR, dx, p.upwind,
                   std::span<double>(&s.F[static_cast<std::size_t>(f) * N],
                                     static_cast<std::size_t>(N)),
                   s);
  }
  boundary_face_flux(p, state, state.t, Side::Right,
                     std::span<double>(&s.F[static_cast<std::size_t>(n) * N],
                                       static_cast<std::size_t>(N)),
                     s);

  for (int i = 0; i < n; ++i) {
    const std::array<double, 1> xi{p.grid.center(i)};
    std::span<const double> ui(&state.values[static_cast<std::size_t>(i) * N],
                               static_cast<std::size_t>(N));
    m.reaction(xi, ui, s.g);
    for (int a = 0; a < N; ++a) {
      double dudt = (state.at(i, a) - prev.at(i, a)) / dt;
      double div = (s.F[static_cast<std::size_t>(i + 1) * N + a] -
                    s.F[static_cast<std::size_t>(i) * N + a]) /
                   dx;
      out[static_cast<std::size_t>(i) * N + a] = dudt + div - s.g[static_cast<std::size_t>(a)];
    }
  }
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// ---- Newton with a colored finite-difference block-tridiagonal Jacobian ---

class Stepper {
 public:
  Stepper(const Problem& p, const TimeController& tc) : p_(p), tc_(tc) {
    n_ = p.grid.n;
    N_ = p.model->components();
    scratch_.init(n_, N_, p.model->a_size(), p.model->phi_size());
    const std::size_t bsz = static_cast<std::size_t>(n_) * N_ * N_;
    L_.resize(bsz);
    D_.resize(bsz);
    U_.resize(bsz);
    W_.resize(bsz);
    piv_.resize(static_cast<std::size_t>(n_) * N_);
    y_.resize(static_cast<std::size_t>(n_) * N_);
  }

  // Newton solve for one implicit Euler step; `next` is left untouched on
  // failure. Fails on non-convergence, non-finite values or a singular pivot.
  bool try_step(const StateField& prev, double dt, StateField& next, int& iters) {
    work_ = prev;
    work_.t = prev.t + dt;
    bool polished = false;
    iters = 0;
    for (int it = 0; it <= tc_.newton_max_iters; ++it) {
      residual_impl(p_, work_, prev, dt, r_, scratch_);
      if (!all_finite(r_)) return false;
      if (sup_norm(r_) <= tc_.newton_tol) {
        if (!tc_.newton_polish || polished) {
          next = std::move(work_);
          return true;
        }
        polished = true;  // take one more update before accepting
      }
      if (it == tc_.newton_max_iters) return false;
      if (!newton_update(prev, dt)) return false;
      if (!all_finite(work_.values)) return false;
      ++iters;
    }
    return false;
  }

 private:
  bool newton_update(const StateField& prev, double dt) {
    assemble_jacobian(prev, dt);
    if (!factor()) return false;
    // solve J * delta = -r, apply in place
    for (std::size_t i = 0; i < r_.size(); ++i) y_[i] = -r_[i];
    if (!solve_tridiag()) return false;
    for (std::size_t i = 0; i < work_.values.size(); ++i) work_.values[i] += y_[i];
    return true;
  }

  double* block(std::vector<double>& v, int i) { return &v[static_cast<std::size_t>(i) * N_ * N_]; }

  // Cells j, j+3, j+6, ... have disjoint residual stencils, so one perturbed
  // assembly per (color, component) fills a full Jacobian column set.
  void assemble_jacobian(const StateField& prev, double dt) {
    std::fill(L_.begin(), L_.end(), 0.0);
    std::fill(D_.begin(), D_.end(), 0.0);
    std::fill(U_.begin(), U_.end(), 0.0);
    base_r_ = r_;  // residual at the current iterate, assembled by the caller
    pert_ = work_;
    for (int color = 0; color < 3; ++color) {
      for (int beta = 0; beta < N_; ++beta) {
        hs_.assign(static_cast<std::size_t>(n_), 0.0);
        for (int j = color; j < n_; j += 3) {
          double& v = pert_.values[static_cast<std::size_t>(j) * N_ + beta];
          double h = 1e-7 * (1.0 + std::fabs(v));
          hs_[static_cast<std::size_t>(j)] = h;
          v += h;
        }
        residual_impl(p_, pert_, prev, dt, rp_, scratch_);
        for (int j = color; j < n_; j += 3) {
          double h = hs_[static_cast<std::size_t>(j)];
          for (int i = std::max(0, j - 1); i <= std::min(n_ - 1, j + 1); ++i) {
            double* blk = (i == j)       ? block(D_, i)
                          : (i == j - 1) ? block(U_, i)
                                         : block(L_, i);
            for (int al = 0; al < N_; ++al)
              blk[al * N_ + beta] = (rp_[static_cast<std::size_t>(i) * N_ + al] -
                                     base_r_[static_cast<std::size_t>(i) * N_ + al]) /
                                    h;
          }
          pert_.values[static_cast<std::size_t>(j) * N_ + beta] =
              work_.values[static_cast<std::size_t>(j) * N_ + beta];
        }
      }
    }
  }

  // Block-Thomas factorization; D_ is overwritten with the LU factors of the
  // eliminated diagonal blocks and W_ holds Dhat^{-1} U.
  bool factor() {
    const int nb = N_ * N_;
    std::vector<double> col(static_cast<std::size_t>(N_));
    for (int i = 0; i < n_; ++i) {
      double* d = block(D_, i);
      if (i > 0) gemm_sub(d, block(L_, i), block(W_, i - 1), N_);
      if (!lu_factor(d, N_, &piv_[static_cast<std::size_t>(i) * N_])) return false;
      if (i < n_ - 1) {
        double* w = block(W_, i);
        std::memcpy(w, block(U_, i), sizeof(double) * static_cast<std::size_t>(nb));
        // W_i = Dhat_i^{-1} U_i, column by column
        for (int c = 0; c < N_; ++c) {
          for (int r = 0; r < N_; ++r) col[static_cast<std::size_t>(r)] = w[r * N_ + c];
          lu_solve(d, N_, &piv_[static_cast<std::size_t>(i) * N_], col.data());
          for (int r = 0; r < N_; ++r) w[r * N_ + c] = col[static_cast<std::size_t>(r)];
        }
      }
    }
    return true;
  }

  bool solve_tridiag() {
    for (int i = 0; i < n_; ++i) {
      double* yi = &y_[static_cast<std::size_t>(i) * N_];
      if (i > 0) gemv_sub(yi, block(L_, i), &y_[static_cast<std::size_t>(i - 1) * N_], N_);
      lu_solve(block(D_, i), N_, &piv_[static_cast<std::size_t>(i) * N_], yi);
    }
    for (int i = n_ - 2; i >= 0; --i)
      gemv_sub(&y_[static_cast<std::size_t>(i) * N_], block(W_, i),
               &y_[static_cast<std::size_t>(i + 1) * N_], N_);
    return all_finite(y_);
  }

  const Problem& p_;
  const TimeController& tc_;
  int n_ = 0, N_ = 0;
  Scratch scratch_;
  StateField work_, pert_;
  std::vector<double> r_, rp_, base_r_, hs_;
  std::vector<double> L_, D_, U_, W_, y_;
  std::vector<int> piv_;
};

}  // namespace

void face_flux(const CoefficientModel& m, double x_face, std::span<const double> uL,
               std::span<const double> uR, double dx, bool upwind, std::span<double> out) {
  Scratch s;
  s.init(1, m.components(), m.a_size(), m.phi_size());
  face_flux_impl(m, x_face, uL, uR, dx, upwind, out, s);
}

void residual(const Problem& p, const StateField& state, const StateField& prev, double dt,
              std::vector<double>& out) {
  Scratch s;
  s.init(state.n, state.N, p.model->a_size(), p.model->phi_size());
  residual_impl(p, state, prev, dt, out, s);
}

StepResult advance(const Problem& p, const StateField& state, double dt_trial,
                   const TimeController& tc) {
  if (!state.finite()) throw SolverError("advance called with a non-finite state");
  Stepper stepper(p, tc);
  StepResult res;
  double dt = dt_trial;
  while (dt >= tc.dt_min * (1.0 - 1e-12)) {
    int iters = 0;
    StateField next;
    if (stepper.try_step(state, dt, next, iters)) {
      res.ok = true;
      res.state = std::move(next);
      res.dt_used = dt;
      res.newton_iters = iters;
      return res;
    }
    dt *= tc.shrink;
  }
  res.ok = false;
  res.dt_used = dt;
  return res;
}

namespace {

std::vector<double> snapshot_targets(double t0, double T, double cadence) {
  std::vector<double> targets;
  const double eps = 1e-12 * std::max(1.0, std::fabs(T));
  if (cadence > 0.0) {
    for (int k = 1;; ++k) {
      double t = k * cadence;
      if (t > T - eps) break;
      if (t > t0 + eps) targets.push_back(t);
    }
  }
  targets.push_back(T);
  return targets;
}

}  // namespace

RunResult solve(const Problem& p, const StateField& u0, double T, const TimeController& tc,
                const SolveOptions& opt, const StepCallback& on_step) {
  if (p.model->dim() != 1) throw SolverError("the PDE solver is one-dimensional");
  if (u0.n != p.grid.n || u0.N != p.model->components())
    throw SolverError("initial state does not match grid/model shape");
  if (!u0.finite()) throw SolverError("initial state has non-finite entries");
  if (!(tc.dt_min <= tc.dt_init && tc.dt_init <= tc.dt_max))
    throw SolverError("time controller needs dt_min <= dt_init <= dt_max");

  const double eps = 1e-12 * std::max(1.0, std::fabs(T));
  RunResult res;
  StateField state = u0;
  double nominal = opt.dt_seed > 0.0 ? opt.dt_seed : tc.dt_init;
  res.snapshots.push_back({state.t, state, nominal});
  if (state.t >= T - eps) return res;

  const std::vector<double> targets = snapshot_targets(state.t, T, opt.snapshot_cadence);
  std::size_t ti = 0;

  Stepper stepper(p, tc);
  while (state.t < T - eps) {
    while (ti < targets.size() && targets[ti] <= state.t + eps) ++ti;
    const double target = ti < targets.size() ? targets[ti] : T;

    double dt = nominal;
    bool clipped = false;
    if (state.t + dt >= target - eps) {
      dt = target - state.t;
      clipped = true;
    }

    int halvings = 0;
    StateField next;
    int iters = 0;
    while (!stepper.try_step(state, dt, next, iters)) {
      dt *= tc.shrink;
      clipped = false;
      ++halvings;
      if (dt < tc.dt_min * (1.0 - 1e-12)) {
        res.status = RunStatus::NewtonFailure;
        res.message = "Newton failed to converge at dt_min = " + std::to_string(tc.dt_min) +
                      " (t = " + std::to_string(state.t) + ")";
        res.snapshots.push_back({state.t, state, nominal});
        return res;
      }
    }

    state = std::move(next);
    if (clipped) state.t = target;  // land exactly, keep restarts bitwise equal
    res.accepted_times.push_back(state.t);
    res.accepted_dts.push_back(dt);

    if (halvings > 0)
      nominal = dt;
    else if (!clipped)
      nominal = std::min(nominal * tc.growth, tc.dt_max);

    if (on_step) {
      if (on_step(state, dt) == StepAction::StopBlowup) {
        res.status = RunStatus::BlowupSuspected;
        res.message = "blow-up policy triggered at t = " + std::to_string(state.t);
        res.snapshots.push_back({state.t, state, nominal});
        return res;
      }
    }

    if (clipped) res.snapshots.push_back({state.t, state, nominal});
  }
  return res;
}

RunResult restart_from_snapshot(const Problem& p, const RunResult& prior, int k, double T,
                                const TimeController& tc, const SolveOptions& opt,
                                const StepCallback& on_step) {
  if (k < 0 || k >= static_cast<int>(prior.snapshots.size()))
    throw SolverError("snapshot index out of range");
  const SnapshotRecord& snap = prior.snapshots[static_cast<std::size_t>(k)];
  if (!snap.state.finite()) throw SolverError("corrupt snapshot: non-finite state");
  SolveOptions o = opt;
  o.dt_seed = snap.dt_seed;
  return solve(p, snap.state, T, tc, o, on_step);
}

}  // namespace pqlab

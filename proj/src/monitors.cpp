#include "monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pqlab {

double invariant_violation(const StateField& s) {
  if (s.N != 2) throw ModelError("invariant_violation expects N = 2");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.n; ++i) {
    double u1 = s.at(i, 0), u2 = s.at(i, 1);
    worst = std::max({worst, -u1, -u2, u1 + u2 - 1.0});
  }
  return worst;
}

double mass_total(const StateField& s, const Grid1D& g, int alpha) {
  const double dx = g.dx();
  double sum = 0.0, comp = 0.0;  // Kahan
  for (int i = 0; i < s.n; ++i) {
    double term = s.at(i, alpha) * dx - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

namespace {

constexpr int kPairScanCap = 4096;

int scan_stride(int n) { return n <= kPairScanCap ? 1 : (n + kPairScanCap - 1) / kPairScanCap; }

}  // namespace

double holder_seminorm_scalar(std::span<const double> x, std::span<const double> v,
                              double gamma) {
  const int n = static_cast<int>(x.size());
  const int stride = scan_stride(n);
  double best = 0.0;
  for (int i = 0; i < n; i += stride)
    for (int j = i + stride; j < n; j += stride) {
      double dxij = std::fabs(x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)]);
      if (dxij == 0.0) continue;
      double q = std::fabs(v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(i)]) /
                 std::pow(dxij, gamma);
      best = std::max(best, q);
    }
  return best;
}

double modulus_scalar(std::span<const double> x, std::span<const double> v, double delta) {
  const int n = static_cast<int>(x.size());
  const double limit = delta * (1.0 + 1e-12);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)] > limit) break;
      best = std::max(best, std::fabs(v[static_cast<std::size_t>(j)] -
                                      v[static_cast<std::size_t>(i)]));
    }
  }
  return best;
}

double holder_seminorm(const StateField& s, const Grid1D& g, double gamma,
                       std::optional<double> time_weight_r) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw ModelError("holder_seminorm needs 0 < gamma < 1");
  std::vector<double> xs(static_cast<std::size_t>(s.n));
  for (int i = 0; i < s.n; ++i) xs[static_cast<std::size_t>(i)] = g.center(i);
  std::vector<double> vs(static_cast<std::size_t>(s.n));
  double best = 0.0;
  for (int a = 0; a < s.N; ++a) {
    for (int i = 0; i < s.n; ++i) vs[static_cast<std::size_t>(i)] = s.at(i, a);
    best = std::max(best, holder_seminorm_scalar(xs, vs, gamma));
  }
  if (time_weight_r) best *= std::pow(s.t, (gamma - *time_weight_r) / 2.0);
  return best;
}

double modulus_of_continuity(const StateField& s, const Grid1D& g, double delta) {
  if (!(delta > 0.0)) throw ModelError("modulus_of_continuity needs delta > 0");
  std::vector<double> xs(static_cast<std::size_t>(s.n));
  for (int i = 0; i < s.n; ++i) xs[static_cast<std::size_t>(i)] = g.center(i);
  std::vector<double> vs(static_cast<std::size_t>(s.n));
  double best = 0.0;
  for (int a = 0; a < s.N; ++a) {
    for (int i = 0; i < s.n; ++i) vs[static_cast<std::size_t>(i)] = s.at(i, a);
    best = std::max(best, modulus_scalar(xs, vs, delta));
  }
  return best;
}

namespace {

// int_Omega |d_x u_a|^p dx, central differences interior, one-sided walls
double grad_power_integral(const StateField& s, const Grid1D& g, int a, int p) {
  const double dx = g.dx();
  double acc = 0.0;
  for (int i = 0; i < s.n; ++i) {
    double d;
    if (i == 0)
      d = (s.at(1, a) - s.at(0, a)) / dx;
    else if (i == s.n - 1)
      d = (s.at(s.n - 1, a) - s.at(s.n - 2, a)) / dx;
    else
      d = (s.at(i + 1, a) - s.at(i - 1, a)) / (2.0 * dx);
    acc += std::pow(std::fabs(d), p) * dx;
  }
  return acc;
}

double l2_norm(const StateField& s, const Grid1D& g) {
  double acc = 0.0;
  const double dx = g.dx();
  for (double v : s.values) acc += v * v * dx;
  return std::sqrt(acc);
}

double grad_sq_all(const StateField& s, const Grid1D& g) {
  double acc = 0.0;
  for (int a = 0; a < s.N; ++a) acc += grad_power_integral(s, g, a, 2);
  return acc;
}

}  // namespace

EnergyReport energy_v102(std::span<const SnapshotRecord> snaps, const Grid1D& g, double lambda0,
                         double c1) {
  if (snaps.size() < 2) throw ModelError("energy_v102 needs at least two snapshots");
  EnergyReport rep;
  rep.c1 = c1;
  double diss = 0.0;
  double prev_t = snaps[0].t;
  double prev_g = grad_sq_all(snaps[0].state, g);
  rep.sup_l2 = l2_norm(snaps[0].state, g);
  for (std::size_t k = 1; k < snaps.size(); ++k) {
    double cur_g = grad_sq_all(snaps[k].state, g);
    diss += 0.5 * (prev_g + cur_g) * (snaps[k].t - prev_t);
    rep.sup_l2 = std::max(rep.sup_l2, l2_norm(snaps[k].state, g));
    prev_t = snaps[k].t;
    prev_g = cur_g;
  }
  rep.dissipation_integral = diss;
  double u0sq = l2_norm(snaps[0].state, g);
  u0sq *= u0sq;
  rep.lhs = rep.sup_l2 * rep.sup_l2 + lambda0 * diss;
  rep.rhs = 2.0 * c1 * (snaps.back().t - snaps.front().t) + u0sq;
  rep.bound_pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

double energy_c1_from_model(const CoefficientModel& m, double lambda0, double omega_measure,
                            int x_samples, int u_samples) {
  const int N = m.components();
  const DomainBox& box = m.domain_box();
  std::vector<double> phi(static_cast<std::size_t>(m.phi_size()));
  std::vector<double> gv(static_cast<std::size_t>(N));

  double sup_phi_sq = 0.0;
  std::vector<double> sup_g(static_cast<std::size_t>(N), 0.0);
  auto xs_pts = std::vector<double>();
  for (int i = 0; i <= std::max(1, x_samples); ++i)
    xs_pts.push_back(box.x_lo[0] +
                     (box.x_hi[0] - box.x_lo[0]) * (static_cast<double>(i) / std::max(1, x_samples)));
  // tensor scan of the u region
  const int m_u = std::max(1, u_samples);
  std::vector<int> idx(static_cast<std::size_t>(N), 0);
  std::vector<double> u(static_cast<std::size_t>(N));
  for (;;) {
    for (int a = 0; a < N; ++a)
      u[static_cast<std::size_t>(a)] =
          box.u_lo[static_cast<std::size_t>(a)] +
          (box.u_hi[static_cast<std::size_t>(a)] - box.u_lo[static_cast<std::size_t>(a)]) *
              (static_cast<double>(idx[static_cast<std::size_t>(a)]) / m_u);
    if (box.contains_u(u)) {
      for (double x1 : xs_pts) {
        const std::array<double, 1> x{x1};
        m.convection(x, u, phi);
        m.reaction(x, u, gv);
        double psq = 0.0;
        for (double v : phi) psq += v * v;
        sup_phi_sq = std::max(sup_phi_sq, psq);
        for (int a = 0; a < N; ++a)
          sup_g[static_cast<std::size_t>(a)] =
              std::max(sup_g[static_cast<std::size_t>(a)], std::fabs(gv[static_cast<std::size_t>(a)]));
      }
    }
    int a = 0;
    for (; a < N; ++a) {
      if (++idx[static_cast<std::size_t>(a)] <= m_u) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    if (a == N) break;
  }

  double g_term = 0.0;
  for (int a = 0; a < N; ++a) {
    double sup_u = std::max(std::fabs(box.u_lo[static_cast<std::size_t>(a)]),
                            std::fabs(box.u_hi[static_cast<std::size_t>(a)]));
    g_term += sup_g[static_cast<std::size_t>(a)] * sup_u;
  }
  return omega_measure * (sup_phi_sq / (2.0 * lambda0) + g_term);
}

GradLpReport grad_lp(std::span<const SnapshotRecord> snaps, const Grid1D& g, int alpha, int p) {
  if (p < 2 || p % 2 != 0) throw ModelError("grad_lp needs even p >= 2");
  if (snaps.size() < 2) throw ModelError("grad_lp needs at least two snapshots");
  GradLpReport rep;
  double acc = 0.0;
  double prev_t = snaps[0].t;
  double prev_v = grad_power_integral(snaps[0].state, g, alpha, p);
  rep.times.push_back(prev_t);
  rep.partial.push_back(0.0);
  for (std::size_t k = 1; k < snaps.size(); ++k) {
    double cur = grad_power_integral(snaps[k].state, g, alpha, p);
    acc += 0.5 * (prev_v + cur) * (snaps[k].t - prev_t);
    rep.times.push_back(snaps[k].t);
    rep.partial.push_back(acc);
    prev_t = snaps[k].t;
    prev_v = cur;
  }
  rep.total = acc;

  // bounded when the tail quarter accumulates at well under the head rate
  const double span = rep.times.back() - rep.times.front();
  if (span > 0.0) {
    auto rate = [&](double t_lo, double t_hi) {
      double v_lo = 0.0, v_hi = rep.total;
      for (std::size_t k = 0; k < rep.times.size(); ++k) {
        if (rep.times[k] <= t_lo) v_lo = rep.partial[k];
        if (rep.times[k] <= t_hi) v_hi = rep.partial[k];
      }
      return (v_hi - v_lo) / std::max(t_hi - t_lo, 1e-300);
    };
    double head = rate(rep.times.front(), rep.times.front() + 0.25 * span);
    double tail = rate(rep.times.back() - 0.25 * span, rep.times.back());
    rep.bounded = tail <= 0.5 * head + 1e-300;
  }
  return rep;
}

BlowupVerdict blowup_status(std::span<const double> series, const BlowupPolicy& policy) {
  for (double v : series)
    if (!std::isfinite(v)) return BlowupVerdict::BlowupSuspected;
  if (series.size() < 2) return BlowupVerdict::Completed;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(policy.window),
                                              series.size() - 1);
  const std::size_t start = series.size() - 1 - w;
  bool monotone = true;
  for (std::size_t i = start; i + 1 < series.size(); ++i)
    if (series[i + 1] < series[i]) { monotone = false; break; }
  if (!monotone) return BlowupVerdict::Completed;
  double first = series[start], last = series.back();
  if (last > policy.factor * std::max(first, 1e-300)) return BlowupVerdict::BlowupSuspected;
  return BlowupVerdict::Completed;
}

PrecompactnessProxy modulus_table(std::span<const SnapshotRecord> snaps, const Grid1D& g,
                                  std::span<const double> deltas, double t_min) {
  PrecompactnessProxy proxy;
  proxy.deltas.assign(deltas.begin(), deltas.end());
  for (const auto& snap : snaps) {
    if (snap.t < t_min) continue;
    proxy.times.push_back(snap.t);
    std::vector<double> row;
    row.reserve(deltas.size());
    for (double d : deltas) row.push_back(modulus_of_continuity(snap.state, g, d));
    proxy.omega.push_back(std::move(row));
  }
  return proxy;
}

}  // namespace pqlab

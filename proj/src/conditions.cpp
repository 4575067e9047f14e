#include "conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pqlab {

std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n) {
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i * n + j)]; };

  double scale = 0.0;
  for (double v : m) scale += v * v;
  scale = std::sqrt(scale);
  const double stop = std::max(scale, 1.0) * 1e-15;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(2.0 * off) <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::Ellipticity: return "ellipticity";
    case ConditionId::TriangularA21: return "triangular_A21";
    case ConditionId::Cond1DA22Du1: return "cond1_dA22_du1";
    case ConditionId::Cond2DPhi2Du1: return "cond2_dphi2_du1";
    case ConditionId::FC: return "FC";
    case ConditionId::LC: return "LC";
    case ConditionId::GGC: return "GGC";
    case ConditionId::FCB: return "FCB";
    case ConditionId::Compatibility: return "compatibility";
  }
  return "?";
}

std::optional<ConditionId> condition_from_string(const std::string& s) {
  for (ConditionId id :
       {ConditionId::Ellipticity, ConditionId::TriangularA21, ConditionId::Cond1DA22Du1,
        ConditionId::Cond2DPhi2Du1, ConditionId::FC, ConditionId::LC, ConditionId::GGC,
        ConditionId::FCB, ConditionId::Compatibility})
    if (s == to_string(id)) return id;
  return std::nullopt;
}

namespace {

std::vector<double> axis_points(double lo, double hi, int intervals) {
  intervals = std::max(intervals, 1);
  std::vector<double> pts(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i)
    pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / intervals);
  return pts;
}

// Tensor samples of x over the domain box (d axes) and u over the simplex or
// u box (N axes; simplex keeps u1+u2 <= 1 points only).
std::vector<std::vector<double>> x_grid(const DomainBox& box, int intervals) {
  const int d = static_cast<int>(box.x_lo.size());
  std::vector<std::vector<double>> axes;
  for (int l = 0; l < d; ++l)
    axes.push_back(axis_points(box.x_lo[static_cast<std::size_t>(l)],
                               box.x_hi[static_cast<std::size_t>(l)], intervals));
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) p[static_cast<std::size_t>(l)] = axes[static_cast<std::size_t>(l)][idx[static_cast<std::size_t>(l)]];
    pts.push_back(std::move(p));
    int l = 0;
    for (; l < d; ++l) {
      if (++idx[static_cast<std::size_t>(l)] < axes[static_cast<std::size_t>(l)].size()) break;
      idx[static_cast<std::size_t>(l)] = 0;
    }
    if (l == d) break;
  }
  return pts;
}

std::vector<std::vector<double>> u_grid(const DomainBox& box, int intervals) {
  const int N = static_cast<int>(box.u_lo.size());
  std::vector<std::vector<double>> axes;
  for (int a = 0; a < N; ++a)
    axes.push_back(axis_points(box.u_lo[static_cast<std::size_t>(a)],
                               box.u_hi[static_cast<std::size_t>(a)], intervals));
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
  for (;;) {
    std::vector<double> p(static_cast<std::size_t>(N));
    for (int a = 0; a < N; ++a) p[static_cast<std::size_t>(a)] = axes[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    if (box.contains_u(p)) pts.push_back(std::move(p));
    int a = 0;
    for (; a < N; ++a) {
      if (++idx[static_cast<std::size_t>(a)] < axes[static_cast<std::size_t>(a)].size()) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    if (a == N) break;
  }
  return pts;
}

double default_tolerance(const CoefficientModel& m, const CheckOptions& opt) {
  if (opt.tolerance) return *opt.tolerance;
  return m.derivative_kind() == DerivativeKind::Analytic ? 1e-8 : 1e-5;
}

// simplex edge parameterizations for N = 2: {u1=0}, {u2=0}, {u1+u2=1}
std::array<double, 2> edge_point(int h, double s) {
  switch (h) {
    case 1: return {0.0, s};
    case 2: return {s, 0.0};
    default: return {s, 1.0 - s};
  }
}
std::array<double, 2> edge_gradient(int h) {
  switch (h) {
    case 1: return {-1.0, 0.0};
    case 2: return {0.0, -1.0};
    default: return {1.0, 1.0};
  }
}

struct MaxTracker {
  double value = -std::numeric_limits<double>::infinity();
  WorstSite site;
  void offer(double v, std::span<const double> x, std::span<const double> u, int h = -1,
             int j = -1, int k = -1) {
    if (v > value) {
      value = v;
      site.x.assign(x.begin(), x.end());
      site.u.assign(u.begin(), u.end());
      site.h = h;
      site.j = j;
      site.k = k;
    }
  }
};

}  // namespace

EllipticityReport estimate_ellipticity(const CoefficientModel& m, int x_samples, int u_samples) {
  const int N = m.components(), d = m.dim();
  const int nd = N * d;
  const auto xs = x_grid(m.domain_box(), x_samples);
  const auto us = u_grid(m.domain_box(), u_samples);

  EllipticityReport rep;
  rep.x_samples = std::max(x_samples, 1);
  rep.u_samples = std::max(u_samples, 1);
  rep.lambda0 = std::numeric_limits<double>::infinity();
  rep.lambda1 = -std::numeric_limits<double>::infinity();

  std::vector<double> A(static_cast<std::size_t>(m.a_size()));
  std::vector<double> S(static_cast<std::size_t>(nd * nd));
  for (const auto& x : xs) {
    for (const auto& u : us) {
      m.diffusion(x, u, A);
      for (double v : A)
        if (!std::isfinite(v))
          throw ModelError("non-finite diffusion coefficient sample in ellipticity estimate");
      // M[(a,j),(b,k)] = A^{jk}_{ab}, then symmetrize
      for (int a = 0; a < N; ++a)
        for (int j = 0; j < d; ++j)
          for (int b = 0; b < N; ++b)
            for (int k = 0; k < d; ++k) {
              double v = A[static_cast<std::size_t>(m.a_index(a, b, j, k))];
              double w = A[static_cast<std::size_t>(m.a_index(b, a, k, j))];
              S[static_cast<std::size_t>((a * d + j) * nd + (b * d + k))] = 0.5 * (v + w);
            }
      auto eig = symmetric_eigenvalues(S, nd);
      if (eig.front() < rep.lambda0) {
        rep.lambda0 = eig.front();
        rep.min_site.x.assign(x.begin(), x.end());
        rep.min_site.u.assign(u.begin(), u.end());
      }
      if (eig.back() > rep.lambda1) {
        rep.lambda1 = eig.back();
        rep.max_site.x.assign(x.begin(), x.end());
        rep.max_site.u.assign(u.begin(), u.end());
      }
    }
  }
  rep.cordes_ratio = rep.lambda0 / rep.lambda1;
  return rep;
}

namespace {

ConditionReport check_ellipticity_condition(const CoefficientModel& m, const CheckOptions& opt) {
  ConditionReport rep;
  rep.id = ConditionId::Ellipticity;
  auto er = estimate_ellipticity(m, opt.x_samples, opt.u_samples);
  // pass means a strictly positive lower ellipticity constant
  rep.tolerance = 0.0;
  rep.worst_residual = -er.lambda0;
  rep.pass = rep.worst_residual <= rep.tolerance && er.lambda0 > 0.0;
  rep.worst_site = er.min_site;
  rep.aux["lambda0"] = er.lambda0;
  rep.aux["lambda1"] = er.lambda1;
  rep.aux["cordes_ratio"] = er.cordes_ratio;
  rep.note = "lambda0 > 0 over the domain box";
  return rep;
}

// max |expr| over the (x, u) sample grid; selector pulls the quantity out of
// the model at one sample.
template <class F>
ConditionReport pointwise_max_check(const CoefficientModel& m, ConditionId id,
                                    const CheckOptions& opt, F&& selector, const char* note) {
  ConditionReport rep;
  rep.id = id;
  rep.tolerance = default_tolerance(m, opt);
  rep.note = note;
  MaxTracker worst;
  for (const auto& x : x_grid(m.domain_box(), opt.x_samples))
    for (const auto& u : u_grid(m.domain_box(), opt.u_samples)) {
      auto [v, j, k] = selector(x, u);
      worst.offer(v, x, u, -1, j, k);
    }
  rep.worst_residual = worst.value;
  rep.worst_site = worst.site;
  rep.pass = rep.worst_residual <= rep.tolerance;
  return rep;
}

ConditionReport check_triangular(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("triangular_A21 check expects N = 2");
  std::vector<double> A(static_cast<std::size_t>(m.a_size()));
  return pointwise_max_check(
      m, ConditionId::TriangularA21, opt,
      [&](std::span<const double> x, std::span<const double> u) {
        m.diffusion(x, u, A);
        double worst = 0.0;
        int wj = 0, wk = 0;
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            double v = std::fabs(A[static_cast<std::size_t>(m.a_index(1, 0, j, k))]);
            if (v > worst) { worst = v; wj = j; wk = k; }
          }
        return std::tuple<double, int, int>(worst, wj, wk);
      },
      "A21 == 0 on the domain box");
}

ConditionReport check_cond1(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("cond1 check expects N = 2");
  std::vector<double> dA(static_cast<std::size_t>(m.a_size() * N));
  return pointwise_max_check(
      m, ConditionId::Cond1DA22Du1, opt,
      [&](std::span<const double> x, std::span<const double> u) {
        m.diffusion_du(x, u, dA);
        double worst = 0.0;
        int wj = 0, wk = 0;
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            double v = std::fabs(dA[static_cast<std::size_t>(m.a_index(1, 1, j, k) * N + 0)]);
            if (v > worst) { worst = v; wj = j; wk = k; }
          }
        return std::tuple<double, int, int>(worst, wj, wk);
      },
      "dA22/du1 == 0 on the domain box");
}

ConditionReport check_cond2(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("cond2 check expects N = 2");
  std::vector<double> dphi(static_cast<std::size_t>(m.phi_size() * N));
  return pointwise_max_check(
      m, ConditionId::Cond2DPhi2Du1, opt,
      [&](std::span<const double> x, std::span<const double> u) {
        m.convection_du(x, u, dphi);
        double worst = 0.0;
        int wj = 0;
        for (int j = 0; j < d; ++j) {
          double v = std::fabs(dphi[static_cast<std::size_t>(m.phi_index(1, j) * N + 0)]);
          if (v > worst) { worst = v; wj = j; }
        }
        return std::tuple<double, int, int>(worst, wj, -1);
      },
      "dphi2/du1 == 0 on the domain box");
}

// FC: for each simplex edge, sum_a dphi^j_a/du_b * dG_h/du_a must be parallel
// to dG_h/du_b; the residual is the orthogonal component. The parallel
// coefficient is the paper's lambda^j_h; its range goes to aux.
ConditionReport check_fc(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("FC check expects N = 2");
  ConditionReport rep;
  rep.id = ConditionId::FC;
  rep.tolerance = default_tolerance(m, opt);
  rep.note = "flux Jacobian maps edge normals to edge normals";

  std::vector<double> dphi(static_cast<std::size_t>(m.phi_size() * N));
  MaxTracker worst;
  double lam_min = std::numeric_limits<double>::infinity();
  double lam_max = -lam_min;
  const auto ss = axis_points(0.0, 1.0, opt.edge_samples);
  for (const auto& x : x_grid(m.domain_box(), opt.x_samples)) {
    for (int h = 1; h <= 3; ++h) {
      auto grad = edge_gradient(h);
      const double g2 = grad[0] * grad[0] + grad[1] * grad[1];
      for (double s : ss) {
        auto u = edge_point(h, s);
        m.convection_du(x, u, dphi);
        for (int j = 0; j < d; ++j) {
          double w0 = 0.0, w1 = 0.0;  // w_b = sum_a dphi^j_a/du_b * grad_a
          for (int a = 0; a < N; ++a) {
            double ga = grad[static_cast<std::size_t>(a)];
            w0 += dphi[static_cast<std::size_t>(m.phi_index(a, j) * N + 0)] * ga;
            w1 += dphi[static_cast<std::size_t>(m.phi_index(a, j) * N + 1)] * ga;
          }
          double lam = (w0 * grad[0] + w1 * grad[1]) / g2;
          double r0 = w0 - lam * grad[0];
          double r1 = w1 - lam * grad[1];
          double res = std::sqrt(r0 * r0 + r1 * r1);
          worst.offer(res, x, u, h, j, -1);
          lam_min = std::min(lam_min, lam);
          lam_max = std::max(lam_max, lam);
        }
      }
    }
  }
  rep.worst_residual = worst.value;
  rep.worst_site = worst.site;
  rep.pass = rep.worst_residual <= rep.tolerance;
  rep.aux["lambda_min"] = lam_min;
  rep.aux["lambda_max"] = lam_max;
  return rep;
}

// LC: A^{jk}_{ab} dG_h/du_a parallel to dG_h/du_b on each edge, and the
// extracted mu^{jk}_h must have a positive quadratic form on unit directions.
ConditionReport check_lc(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("LC check expects N = 2");
  ConditionReport rep;
  rep.id = ConditionId::LC;
  rep.tolerance = default_tolerance(m, opt);
  rep.note = "diffusion tensor maps edge normals to edge normals, with positive mu";

  std::vector<double> A(static_cast<std::size_t>(m.a_size()));
  std::vector<double> mu(static_cast<std::size_t>(d * d));
  MaxTracker worst;
  double mu_form_min = std::numeric_limits<double>::infinity();
  const auto ss = axis_points(0.0, 1.0, opt.edge_samples);
  for (const auto& x : x_grid(m.domain_box(), opt.x_samples)) {
    for (int h = 1; h <= 3; ++h) {
      auto grad = edge_gradient(h);
      const double g2 = grad[0] * grad[0] + grad[1] * grad[1];
      for (double s : ss) {
        auto u = edge_point(h, s);
        m.diffusion(x, u, A);
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            double w0 = 0.0, w1 = 0.0;  // w_b = sum_a A^{jk}_{ab} grad_a
            for (int a = 0; a < N; ++a) {
              double ga = grad[static_cast<std::size_t>(a)];
              w0 += A[static_cast<std::size_t>(m.a_index(a, 0, j, k))] * ga;
              w1 += A[static_cast<std::size_t>(m.a_index(a, 1, j, k))] * ga;
            }
            double mujk = (w0 * grad[0] + w1 * grad[1]) / g2;
            mu[static_cast<std::size_t>(j * d + k)] = mujk;
            double r0 = w0 - mujk * grad[0];
            double r1 = w1 - mujk * grad[1];
            worst.offer(std::sqrt(r0 * r0 + r1 * r1), x, u, h, j, k);
          }
        // positivity of mu^{jk} eta^j eta^k on the unit sphere; at d = 1 this
        // is just mu^{11} > 0
        if (d == 1) {
          mu_form_min = std::min(mu_form_min, mu[0]);
        } else {
          std::vector<double> msym(static_cast<std::size_t>(d * d));
          for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
              msym[static_cast<std::size_t>(j * d + k)] =
                  0.5 * (mu[static_cast<std::size_t>(j * d + k)] +
                         mu[static_cast<std::size_t>(k * d + j)]);
          mu_form_min = std::min(mu_form_min, symmetric_eigenvalues(msym, d).front());
        }
      }
    }
  }
  rep.worst_residual = std::max(worst.value, -mu_form_min);
  rep.worst_site = worst.site;
  rep.pass = rep.worst_residual <= rep.tolerance;
  rep.aux["mu_form_min"] = mu_form_min;
  return rep;
}

// GGC: (g_a - gamma_a) dG_h/du_a <= 0 on each edge; the report carries the
// signed maximum, so anything <= tolerance passes.
ConditionReport check_ggc(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components();
  if (N != 2) throw ModelError("GGC check expects N = 2");
  ConditionReport rep;
  rep.id = ConditionId::GGC;
  rep.tolerance = default_tolerance(m, opt);
  rep.note = "reaction minus flux divergence points inward on simplex edges";

  std::vector<double> g(static_cast<std::size_t>(N)), gam(static_cast<std::size_t>(N));
  MaxTracker worst;
  const auto ss = axis_points(0.0, 1.0, opt.edge_samples);
  for (const auto& x : x_grid(m.domain_box(), opt.x_samples)) {
    for (int h = 1; h <= 3; ++h) {
      auto grad = edge_gradient(h);
      for (double s : ss) {
        auto u = edge_point(h, s);
        m.reaction(x, u, g);
        gamma_alpha(m, x, u, gam);
        double v = 0.0;
        for (int a = 0; a < N; ++a)
          v += (g[static_cast<std::size_t>(a)] - gam[static_cast<std::size_t>(a)]) *
               grad[static_cast<std::size_t>(a)];
        worst.offer(v, x, u, h, -1, -1);
      }
    }
  }
  rep.worst_residual = worst.value;
  rep.worst_site = worst.site;
  rep.pass = rep.worst_residual <= rep.tolerance;
  return rep;
}

// FCB: |phi_a . n| on {u_a = 0} and |(phi_1 + phi_2) . n| on the configured
// sum edge, sampled at the boundary points of the x box (d = 1).
ConditionReport check_fcb(const CoefficientModel& m, const CheckOptions& opt) {
  const int N = m.components(), d = m.dim();
  if (N != 2) throw ModelError("FCB check expects N = 2");
  if (d != 1) throw ModelError("FCB check expects d = 1");
  ConditionReport rep;
  rep.id = ConditionId::FCB;
  rep.tolerance = default_tolerance(m, opt);
  rep.note = opt.sum_edge == SumEdge::One ? "flux vanishes on state edges (sum edge u1+u2=1)"
                                          : "flux vanishes on state edges (sum edge u1+u2=0)";

  std::vector<double> phi(static_cast<std::size_t>(m.phi_size()));
  MaxTracker worst;
  const auto ss = axis_points(0.0, 1.0, opt.edge_samples);
  const std::array<std::array<double, 1>, 2> boundary_x = {
      std::array<double, 1>{m.domain_box().x_lo[0]}, std::array<double, 1>{m.domain_box().x_hi[0]}};
  for (const auto& x : boundary_x) {
    // |n| = 1 at d = 1, so |phi . n| = |phi|
    for (int h = 1; h <= 2; ++h) {
      int a = h - 1;
      for (double s : ss) {
        auto u = edge_point(h, s);
        m.convection(x, u, phi);
        worst.offer(std::fabs(phi[static_cast<std::size_t>(a)]), x, u, h, 0, -1);
      }
    }
    if (opt.sum_edge == SumEdge::One) {
      for (double s : ss) {
        auto u = edge_point(3, s);
        m.convection(x, u, phi);
        worst.offer(std::fabs(phi[0] + phi[1]), x, u, 3, 0, -1);
      }
    } else {
      std::array<double, 2> u{0.0, 0.0};
      m.convection(x, u, phi);
      worst.offer(std::fabs(phi[0] + phi[1]), x, u, 3, 0, -1);
    }
  }
  rep.worst_residual = worst.value;
  rep.worst_site = worst.site;
  rep.pass = rep.worst_residual <= rep.tolerance;
  return rep;
}

}  // namespace

ConditionReport check_structural(const CoefficientModel& m, ConditionId id,
                                 const CheckOptions& opt) {
  switch (id) {
    case ConditionId::Ellipticity: return check_ellipticity_condition(m, opt);
    case ConditionId::TriangularA21: return check_triangular(m, opt);
    case ConditionId::Cond1DA22Du1: return check_cond1(m, opt);
    case ConditionId::Cond2DPhi2Du1: return check_cond2(m, opt);
    case ConditionId::FC: return check_fc(m, opt);
    case ConditionId::LC: return check_lc(m, opt);
    case ConditionId::GGC: return check_ggc(m, opt);
    case ConditionId::FCB: return check_fcb(m, opt);
    case ConditionId::Compatibility:
      throw ModelError("compatibility requires run data; use check_compatibility");
  }
  throw ModelError("unknown condition id");
}

ConditionReport check_compatibility(const StateField& u0, const Grid1D& grid,
                                    const BoundarySpec& bc, double tol) {
  ConditionReport rep;
  rep.id = ConditionId::Compatibility;
  rep.tolerance = tol;
  rep.worst_residual = 0.0;
  rep.pass = true;

  bool any_dirichlet = false;
  for (Side side : {Side::Left, Side::Right}) {
    for (int a = 0; a < u0.N; ++a) {
      const auto* dir = std::get_if<DirichletBC>(&bc.at(side, a));
      if (!dir) continue;  // flux-type components need no agreement
      any_dirichlet = true;
      // linear extrapolation of the cell averages to the wall
      double ub0, ub1;
      if (side == Side::Left) {
        ub0 = u0.at(0, a);
        ub1 = u0.at(1, a);
      } else {
        ub0 = u0.at(u0.n - 1, a);
        ub1 = u0.at(u0.n - 2, a);
      }
      double wall = 1.5 * ub0 - 0.5 * ub1;
      double res = std::fabs(wall - dir->value(0.0));
      if (res > rep.worst_residual) {
        rep.worst_residual = res;
        rep.worst_site.x = {side == Side::Left ? grid.x_min : grid.x_max};
        rep.worst_site.u = {wall};
        rep.worst_site.j = a;
      }
    }
  }
  rep.pass = rep.worst_residual <= tol;
  rep.note = any_dirichlet ? "u0 agrees with the Dirichlet datum at t=0"
                           : "vacuous: no Dirichlet components";
  return rep;
}

std::vector<ConditionReport> run_condition_suite(const CoefficientModel& m,
                                                 const CheckOptions& opt,
                                                 const SuiteContext& ctx) {
  std::vector<ConditionReport> reports;
  for (ConditionId id :
       {ConditionId::Ellipticity, ConditionId::TriangularA21, ConditionId::Cond1DA22Du1,
        ConditionId::Cond2DPhi2Du1, ConditionId::FC, ConditionId::LC, ConditionId::GGC,
        ConditionId::FCB})
    reports.push_back(check_structural(m, id, opt));

  if (ctx.u0 && ctx.grid && ctx.bc) {
    reports.push_back(check_compatibility(*ctx.u0, *ctx.grid, *ctx.bc));
  } else {
    ConditionReport rep;
    rep.id = ConditionId::Compatibility;
    rep.pass = true;
    rep.tolerance = 1e-8;
    rep.note = "vacuous: no run data supplied";
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace pqlab

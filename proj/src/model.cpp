#include "model.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <utility>

namespace pqlab {

bool DomainBox::contains_u(std::span<const double> u, double tol) const {
  if (u_region == URegion::Simplex) {
    double sum = 0.0;
    for (double v : u) {
      if (v < -tol) return false;
      sum += v;
    }
    return sum <= 1.0 + tol;
  }
  for (std::size_t a = 0; a < u.size(); ++a)
    if (u[a] < u_lo[a] - tol || u[a] > u_hi[a] + tol) return false;
  return true;
}

DomainBox DomainBox::simplex(int d, int N) {
  DomainBox b;
  b.x_lo.assign(static_cast<std::size_t>(d), 0.0);
  b.x_hi.assign(static_cast<std::size_t>(d), 1.0);
  b.u_region = URegion::Simplex;
  b.u_lo.assign(static_cast<std::size_t>(N), 0.0);
  b.u_hi.assign(static_cast<std::size_t>(N), 1.0);
  return b;
}

DomainBox DomainBox::box(int d, std::vector<double> lo, std::vector<double> hi) {
  DomainBox b;
  b.x_lo.assign(static_cast<std::size_t>(d), 0.0);
  b.x_hi.assign(static_cast<std::size_t>(d), 1.0);
  b.u_region = URegion::Box;
  b.u_lo = std::move(lo);
  b.u_hi = std::move(hi);
  return b;
}

void gamma_alpha(const CoefficientModel& m, std::span<const double> x,
                 std::span<const double> u, std::span<double> out) {
  const int N = m.components(), d = m.dim();
  std::vector<double> dpdx(static_cast<std::size_t>(m.phi_size() * d));
  m.convection_dx(x, u, dpdx);
  for (int a = 0; a < N; ++a) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += dpdx[static_cast<std::size_t>(m.phi_index(a, j) * d + j)];
    out[static_cast<std::size_t>(a)] = s;
  }
}

namespace {

using FillFn = std::function<void(std::span<const double>, std::span<const double>, std::span<double>)>;

FillFn zero_fill() {
  return [](std::span<const double>, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
}

class AnalyticModel final : public CoefficientModel {
 public:
  AnalyticModel(int N, int d, std::string name, DomainBox box, FillFn A, FillFn phi, FillFn g,
                FillFn dA, FillFn dphi_du, FillFn dphi_dx, FillFn dg)
      : CoefficientModel(N, d, std::move(name), DerivativeKind::Analytic, std::move(box)),
        a_(std::move(A)), phi_(std::move(phi)), g_(std::move(g)), da_(std::move(dA)),
        dphi_du_(std::move(dphi_du)), dphi_dx_(std::move(dphi_dx)), dg_(std::move(dg)) {}

  void diffusion(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { a_(x, u, o); }
  void convection(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { phi_(x, u, o); }
  void reaction(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { g_(x, u, o); }
  void diffusion_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { da_(x, u, o); }
  void convection_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { dphi_du_(x, u, o); }
  void convection_dx(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { dphi_dx_(x, u, o); }
  void reaction_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { dg_(x, u, o); }

 private:
  FillFn a_, phi_, g_, da_, dphi_du_, dphi_dx_, dg_;
};

double get_param(const ParamMap& p, const char* name) { return p.at(name); }

ParamMap merge_params(const CatalogEntry& entry, const ParamMap& user) {
  ParamMap merged;
  for (const auto& cp : entry.params) merged[cp.name] = cp.value;
  for (const auto& [k, v] : user) {
    if (!merged.count(k))
      throw ModelError("unknown parameter '" + k + "' for catalog model '" + entry.name + "'");
    merged[k] = v;
  }
  return merged;
}

// capillary family, N = 2, d = 1:
//   A11 = A22 = a,  A12 = c*u1*(1-u1-u2),  A21 = 0,
//   phi1 = q*u1*(1-u1-u2),  phi2 = 0,  g = 0.
// Variants add a deliberate defect that trips exactly one structural check.
std::shared_ptr<const CoefficientModel> make_capillary(const std::string& name, double q,
                                                       double a, double c, bool broken_a21,
                                                       bool broken_fc) {
  if (!(a > 0.0) || c < 0.0 || !(a > c / 8.0))
    throw ModelError("parameter out of admissible range for '" + name +
                     "': ellipticity on the state simplex needs a > 0, c >= 0 and a > c/8");

  // edge-vanishing bumps used by the broken variants
  auto w1 = [](const double* u) { return u[0] * (1.0 - u[0] - u[1]); };
  auto w2 = [](const double* u) { return u[1] * (1.0 - u[0] - u[1]); };

  FillFn A = [a, c, w1, broken_a21, w2](std::span<const double>, std::span<const double> u,
                                        std::span<double> o) {
    o[0] = a;               // A11
    o[1] = c * w1(u.data());  // A12
    o[2] = broken_a21 ? 0.4 * w2(u.data()) : 0.0;  // A21
    o[3] = a;               // A22
  };
  FillFn dA = [c, broken_a21](std::span<const double>, std::span<const double> u,
                              std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    o[1 * 2 + 0] = c * (1.0 - 2.0 * u[0] - u[1]);  // dA12/du1
    o[1 * 2 + 1] = c * (-u[0]);                    // dA12/du2
    if (broken_a21) {
      o[2 * 2 + 0] = 0.4 * (-u[1]);                    // dA21/du1
      o[2 * 2 + 1] = 0.4 * (1.0 - u[0] - 2.0 * u[1]);  // dA21/du2
    }
  };

  // broken_fc adds s(x)*u2*(1-u1-u2) to phi1 with s(0)=s(1)=0, plus the
  // compensating reaction g1 = d/dx of that term so the growth condition
  // stays intact; only the edge-parallelism of dphi fails.
  auto s_of = [](double x) { return 0.4 * x * (1.0 - x); };
  auto ds_of = [](double x) { return 0.4 * (1.0 - 2.0 * x); };

  FillFn phi = [q, w1, broken_fc, s_of, w2](std::span<const double> x, std::span<const double> u,
                                            std::span<double> o) {
    o[0] = q * w1(u.data());
    if (broken_fc) o[0] += s_of(x[0]) * w2(u.data());
    o[1] = 0.0;
  };
  FillFn dphi_du = [q, broken_fc, s_of](std::span<const double> x, std::span<const double> u,
                                        std::span<double> o) {
    o[0] = q * (1.0 - 2.0 * u[0] - u[1]);  // dphi1/du1
    o[1] = q * (-u[0]);                    // dphi1/du2
    if (broken_fc) {
      double s = s_of(x[0]);
      o[0] += s * (-u[1]);
      o[1] += s * (1.0 - u[0] - 2.0 * u[1]);
    }
    o[2] = 0.0;  // dphi2/du1
    o[3] = 0.0;  // dphi2/du2
  };
  FillFn dphi_dx = [broken_fc, ds_of, w2](std::span<const double> x, std::span<const double> u,
                                          std::span<double> o) {
    o[0] = broken_fc ? ds_of(x[0]) * w2(u.data()) : 0.0;
    o[1] = 0.0;
  };
  FillFn g = [broken_fc, ds_of, w2](std::span<const double> x, std::span<const double> u,
                                    std::span<double> o) {
    o[0] = broken_fc ? ds_of(x[0]) * w2(u.data()) : 0.0;
    o[1] = 0.0;
  };
  FillFn dg = [broken_fc, ds_of](std::span<const double> x, std::span<const double> u,
                                 std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    if (broken_fc) {
      double ds = ds_of(x[0]);
      o[0] = ds * (-u[1]);                    // dg1/du1
      o[1] = ds * (1.0 - u[0] - 2.0 * u[1]);  // dg1/du2
    }
  };

  return std::make_shared<AnalyticModel>(2, 1, name, DomainBox::simplex(1, 2), A, phi, g, dA,
                                         dphi_du, dphi_dx, dg);
}

std::shared_ptr<const CoefficientModel> make_perturbed_identity(const std::string& name,
                                                                double lambda, double mu) {
  if (!(lambda > std::fabs(mu)))
    throw ModelError("parameter out of admissible range for '" + name +
                     "': ellipticity needs lambda > |mu|");
  FillFn A = [lambda, mu](std::span<const double>, std::span<const double>, std::span<double> o) {
    o[0] = lambda;
    o[1] = mu;
    o[2] = mu;
    o[3] = lambda;
  };
  return std::make_shared<AnalyticModel>(2, 1, name, DomainBox::simplex(1, 2), A, zero_fill(),
                                         zero_fill(), zero_fill(), zero_fill(), zero_fill(),
                                         zero_fill());
}

std::shared_ptr<const CoefficientModel> make_mms_sine(const std::string& name) {
  const double k = std::numbers::pi * std::numbers::pi - 1.0;
  FillFn A = [](std::span<const double>, std::span<const double>, std::span<double> o) {
    o[0] = 1.0; o[1] = 0.0; o[2] = 0.0; o[3] = 1.0;
  };
  FillFn g = [k](std::span<const double>, std::span<const double> u, std::span<double> o) {
    o[0] = k * u[0];
    o[1] = k * u[1];
  };
  FillFn dg = [k](std::span<const double>, std::span<const double>, std::span<double> o) {
    o[0] = k; o[1] = 0.0; o[2] = 0.0; o[3] = k;
  };
  return std::make_shared<AnalyticModel>(2, 1, name,
                                         DomainBox::box(1, {0.0, 0.0}, {1.0, 1.0}), A,
                                         zero_fill(), g, zero_fill(), zero_fill(), zero_fill(),
                                         dg);
}

class ExprModel final : public CoefficientModel {
 public:
  ExprModel(int d, int N, std::vector<Expr> A, std::vector<Expr> phi, std::vector<Expr> g,
            ParamMap params, DomainBox box)
      : CoefficientModel(N, d, "expressions", DerivativeKind::FiniteDifference, std::move(box)),
        a_(std::move(A)), phi_(std::move(phi)), g_(std::move(g)), params_(std::move(params)) {}

  void diffusion(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    for (int a = 0; a < N_; ++a)
      for (int b = 0; b < N_; ++b)
        o[static_cast<std::size_t>(a_index(a, b, 0, 0))] =
            a_[static_cast<std::size_t>(a * N_ + b)].eval(x, u, params_);
  }
  void convection(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    for (int a = 0; a < N_; ++a) o[static_cast<std::size_t>(a)] = phi_[static_cast<std::size_t>(a)].eval(x, u, params_);
  }
  void reaction(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    for (int a = 0; a < N_; ++a) o[static_cast<std::size_t>(a)] = g_[static_cast<std::size_t>(a)].eval(x, u, params_);
  }

  void diffusion_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    central_du(x, u, o, [this](std::span<const double> xx, std::span<const double> uu, std::span<double> oo) { diffusion(xx, uu, oo); }, a_size());
  }
  void convection_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    central_du(x, u, o, [this](std::span<const double> xx, std::span<const double> uu, std::span<double> oo) { convection(xx, uu, oo); }, phi_size());
  }
  void convection_dx(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    central_dx(x, u, o, [this](std::span<const double> xx, std::span<const double> uu, std::span<double> oo) { convection(xx, uu, oo); }, phi_size());
  }
  void reaction_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    central_du(x, u, o, [this](std::span<const double> xx, std::span<const double> uu, std::span<double> oo) { reaction(xx, uu, oo); }, N_);
  }

 private:
  static constexpr double kStep = 1e-6;

  template <class F>
  void central_du(std::span<const double> x, std::span<const double> u, std::span<double> o,
                  F&& f, int m) const {
    std::vector<double> up(u.begin(), u.end()), um(u.begin(), u.end());
    std::vector<double> fp(static_cast<std::size_t>(m)), fm(static_cast<std::size_t>(m));
    for (int c = 0; c < N_; ++c) {
      up[static_cast<std::size_t>(c)] = u[static_cast<std::size_t>(c)] + kStep;
      um[static_cast<std::size_t>(c)] = u[static_cast<std::size_t>(c)] - kStep;
      f(x, up, std::span<double>(fp));
      f(x, um, std::span<double>(fm));
      for (int i = 0; i < m; ++i)
        o[static_cast<std::size_t>(i * N_ + c)] =
            (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * kStep);
      up[static_cast<std::size_t>(c)] = u[static_cast<std::size_t>(c)];
      um[static_cast<std::size_t>(c)] = u[static_cast<std::size_t>(c)];
    }
  }

  template <class F>
  void central_dx(std::span<const double> x, std::span<const double> u, std::span<double> o,
                  F&& f, int m) const {
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    std::vector<double> fp(static_cast<std::size_t>(m)), fm(static_cast<std::size_t>(m));
    for (int l = 0; l < d_; ++l) {
      xp[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)] + kStep;
      xm[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)] - kStep;
      f(xp, u, std::span<double>(fp));
      f(xm, u, std::span<double>(fm));
      for (int i = 0; i < m; ++i)
        o[static_cast<std::size_t>(i * d_ + l)] =
            (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * kStep);
      xp[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)];
      xm[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)];
    }
  }

  std::vector<Expr> a_, phi_, g_;
  ParamMap params_;
};

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"identity_diffusion", {}, "N=2, d=1, A = I, phi = 0, g = 0"},
      {"perturbed_identity",
       {{"lambda", 1.0}, {"mu", 0.0}},
       "A = lambda*I + mu*[[0,1],[1,0]], phi = 0, g = 0; needs lambda > |mu|"},
      {"capillary_demo",
       {{"q", 1.0}, {"a", 1.0}, {"c", 1.0}},
       "two-phase saturation demo: A11=A22=a, A12=c*u1*(1-u1-u2), A21=0, "
       "phi1=q*u1*(1-u1-u2); needs a > c/8"},
      {"capillary_broken_A21",
       {{"q", 1.0}, {"a", 1.0}, {"c", 1.0}},
       "capillary_demo with A21 = 0.4*u2*(1-u1-u2); trips only the triangularity check "
       "(peak 0.1 on the simplex)"},
      {"capillary_broken_FC",
       {{"q", 1.0}, {"a", 1.0}, {"c", 1.0}},
       "capillary_demo with phi1 += 0.4*x*(1-x)*u2*(1-u1-u2) and compensating g1; trips "
       "only the flux edge-parallelism check (peak 0.1)"},
      {"mms_sine",
       {},
       "manufactured case: A = I, phi = 0, g_a = (pi^2-1)*u_a; exact solution "
       "exp(-t)*sin(pi*x) per component"},
  };
  return entries;
}

std::shared_ptr<const CoefficientModel> model_from_catalog(const std::string& name,
                                                           const ParamMap& params) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog())
    if (e.name == name) { entry = &e; break; }
  if (!entry) throw ModelError("unknown catalog model '" + name + "'");
  ParamMap p = merge_params(*entry, params);

  if (name == "identity_diffusion") return make_perturbed_identity(name, 1.0, 0.0);
  if (name == "perturbed_identity")
    return make_perturbed_identity(name, get_param(p, "lambda"), get_param(p, "mu"));
  if (name == "capillary_demo")
    return make_capillary(name, get_param(p, "q"), get_param(p, "a"), get_param(p, "c"), false, false);
  if (name == "capillary_broken_A21")
    return make_capillary(name, get_param(p, "q"), get_param(p, "a"), get_param(p, "c"), true, false);
  if (name == "capillary_broken_FC")
    return make_capillary(name, get_param(p, "q"), get_param(p, "a"), get_param(p, "c"), false, true);
  if (name == "mms_sine") return make_mms_sine(name);
  throw ModelError("catalog entry '" + name + "' has no factory");
}

std::shared_ptr<const CoefficientModel> model_from_expressions(
    int d, int N, const std::vector<std::vector<std::string>>& A,
    const std::vector<std::string>& phi, const std::vector<std::string>& g,
    const ParamMap& params, DomainBox box) {
  if (d != 1) throw ModelError("expression models support d = 1 only");
  if (N < 1) throw ModelError("expression models need N >= 1");
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ModelError(std::string("expression model: ") + what);
  };
  need(static_cast<int>(A.size()) == N, "A must be an N x N array of expressions");
  for (const auto& row : A) need(static_cast<int>(row.size()) == N, "A must be an N x N array of expressions");
  need(static_cast<int>(phi.size()) == N, "phi must have N expressions");
  need(static_cast<int>(g.size()) == N, "g must have N expressions");

  std::vector<Expr> ae, pe, ge;
  ae.reserve(static_cast<std::size_t>(N * N));
  for (const auto& row : A)
    for (const auto& s : row) ae.push_back(Expr::parse(s, d, N));
  for (const auto& s : phi) pe.push_back(Expr::parse(s, d, N));
  for (const auto& s : g) ge.push_back(Expr::parse(s, d, N));

  // reject references to parameters that were not provided
  for (const auto* vec : {&ae, &pe, &ge})
    for (const auto& e : *vec)
      for (const auto& pn : e.param_names())
        if (!params.count(pn))
          throw ModelError("expression '" + e.source() + "' references undefined parameter '" +
                           pn + "'");

  return std::make_shared<ExprModel>(d, N, std::move(ae), std::move(pe), std::move(ge), params,
                                     std::move(box));
}

}  // namespace pqlab

#include "regularize.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace pqlab {

EpsilonScheme::EpsilonScheme(double eps, std::array<double, 2> vv) : epsilon(eps), v(vv) {
  if (!(eps >= 0.0) || !(eps < 1.0))
    throw RegularizeError("epsilon must satisfy 0 <= epsilon < 1");
  if (!(v[0] > 0.0) || !(v[1] > 0.0) || !(v[0] + v[1] < 1.0))
    throw RegularizeError("v must lie strictly inside the state simplex");
}

double transform_value(const EpsilonScheme& s, double w) {
  return (1.0 - s.epsilon) * (w + s.epsilon / 2.0);
}

void transform_data(const EpsilonScheme& s, std::span<const double> w, std::span<double> out) {
  constexpr double tol = 1e-12;
  double sum = 0.0;
  for (double v : w) {
    if (v < -tol)
      throw RegularizeError("transform_data: input component " + std::to_string(v) +
                            " lies outside the state simplex");
    sum += v;
  }
  if (sum > 1.0 + tol)
    throw RegularizeError("transform_data: input component sum " + std::to_string(sum) +
                          " lies outside the state simplex");
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = transform_value(s, w[i]);
}

void transform_field(const EpsilonScheme& s, std::span<double> values, int N) {
  const std::size_t n = values.size() / static_cast<std::size_t>(N);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> cell = values.subspan(i * static_cast<std::size_t>(N),
                                            static_cast<std::size_t>(N));
    transform_data(s, cell, cell);
  }
}

namespace {

class PenalizedReactionModel final : public CoefficientModel {
 public:
  PenalizedReactionModel(EpsilonScheme s, std::shared_ptr<const CoefficientModel> base)
      : CoefficientModel(base->components(), base->dim(), base->name() + "+eps_reaction",
                         base->derivative_kind(), base->domain_box()),
        s_(s), base_(std::move(base)) {}

  void diffusion(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { base_->diffusion(x, u, o); }
  void convection(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { base_->convection(x, u, o); }
  void diffusion_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { base_->diffusion_du(x, u, o); }
  void convection_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { base_->convection_du(x, u, o); }
  void convection_dx(std::span<const double> x, std::span<const double> u, std::span<double> o) const override { base_->convection_dx(x, u, o); }

  void reaction(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    base_->reaction(x, u, o);
    for (int a = 0; a < N_; ++a)
      o[static_cast<std::size_t>(a)] +=
          s_.epsilon * (s_.v[static_cast<std::size_t>(a)] - u[static_cast<std::size_t>(a)]);
  }
  void reaction_du(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
    base_->reaction_du(x, u, o);
    for (int a = 0; a < N_; ++a) o[static_cast<std::size_t>(a * N_ + a)] -= s_.epsilon;
  }

 private:
  EpsilonScheme s_;
  std::shared_ptr<const CoefficientModel> base_;
};

}  // namespace

std::shared_ptr<const CoefficientModel> transform_reaction(
    const EpsilonScheme& s, std::shared_ptr<const CoefficientModel> base) {
  if (s.epsilon == 0.0) return base;
  if (base->components() != 2)
    throw RegularizeError("transform_reaction expects a two-component model");
  return std::make_shared<PenalizedReactionModel>(s, std::move(base));
}

void robin_flux(const EpsilonScheme& s, const CoefficientModel& m, std::span<const double> x,
                std::span<const double> n, std::span<const double> u,
                std::span<const double> target, std::span<double> out) {
  const int N = m.components(), d = m.dim();
  std::vector<double> A(static_cast<std::size_t>(m.a_size()));
  m.diffusion(x, u, A);
  for (int a = 0; a < N; ++a) {
    double acc = 0.0;
    for (int b = 0; b < N; ++b) {
      double lam = 0.0;  // A^{jk}_{ab} n^j n^k
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          lam += A[static_cast<std::size_t>(m.a_index(a, b, j, k))] *
                 n[static_cast<std::size_t>(j)] * n[static_cast<std::size_t>(k)];
      acc += lam * (u[static_cast<std::size_t>(b)] - target[static_cast<std::size_t>(b)]);
    }
    out[static_cast<std::size_t>(a)] = s.epsilon * acc;
  }
}

}  // namespace pqlab

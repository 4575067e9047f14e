// Epsilon-regularization of a base problem: penalized reaction, squeezed
// initial/boundary data, and the Robin-type flux boundary term. With
// epsilon = 0 every transform is the identity.
#pragma once

#include <memory>
#include <span>
#include <stdexcept>

#include "model.hpp"

namespace pqlab {

struct RegularizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Penalty scheme (epsilon, v). v must lie strictly inside the state simplex:
/// v1, v2 > 0 and v1 + v2 < 1. epsilon = 0 means "disabled".
struct EpsilonScheme {
  double epsilon = 0.0;
  std::array<double, 2> v{0.25, 0.25};

  EpsilonScheme() = default;
  EpsilonScheme(double eps, std::array<double, 2> vv);
};

/// Componentwise (1-eps)*(w + eps/2). Requires 0 <= eps < 1 and w inside the
/// simplex up to tolerance 1e-12; the image lies strictly inside for eps > 0.
double transform_value(const EpsilonScheme& s, double w);
void transform_data(const EpsilonScheme& s, std::span<const double> w, std::span<double> out);

/// Same transform applied in place to a full cell array (n x N values);
/// validates simplex containment per cell.
void transform_field(const EpsilonScheme& s, std::span<double> values, int N);

/// Model with reaction g_a + eps*(v_a - u_a); diffusion and convection are
/// untouched. eps = 0 returns the base model unchanged.
std::shared_ptr<const CoefficientModel> transform_reaction(
    const EpsilonScheme& s, std::shared_ptr<const CoefficientModel> base);

/// Prescribed co-normal boundary flux of the regularized problem:
///   f_a . n = eps * A^{jk}_{ab} n^j n^k (u_b_comp - target_b),
/// with the undetermined direction of the paper's boundary term taken equal
/// to n. `target` is the already-squeezed boundary datum. out has size N.
void robin_flux(const EpsilonScheme& s, const CoefficientModel& m, std::span<const double> x,
                std::span<const double> n, std::span<const double> u,
                std::span<const double> target, std::span<double> out);

}  // namespace pqlab

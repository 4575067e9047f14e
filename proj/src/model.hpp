// Coefficient models: the triple (A, phi, g) of a divergence-form
// reaction-diffusion system, with first-order derivative access. Models come
// from a built-in catalog (analytic derivatives) or from DSL expressions
// (central-difference derivatives).
#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"

namespace pqlab {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sampling region for model checks: a box in x paired with either the unit
/// simplex {u_a >= 0, sum u_a <= 1} or a box in u.
struct DomainBox {
  std::vector<double> x_lo, x_hi;  // size d
  enum class URegion { Simplex, Box };
  URegion u_region = URegion::Simplex;
  std::vector<double> u_lo, u_hi;  // bounding box of the u region, size N

  bool contains_u(std::span<const double> u, double tol = 1e-12) const;

  static DomainBox simplex(int d, int N);
  static DomainBox box(int d, std::vector<double> lo, std::vector<double> hi);
};

enum class DerivativeKind { Analytic, FiniteDifference };

/// Evaluator interface. Index conventions (all tensors row-major):
///   A:        a_index(alpha, beta, j, k)        size N*N*d*d
///   phi:      phi_index(alpha, j)               size N*d
///   g:        alpha                             size N
/// Derivative layouts append the differentiation index as the fastest one.
/// All evaluators are pure and safe to call concurrently.
class CoefficientModel {
 public:
  virtual ~CoefficientModel() = default;

  int components() const { return N_; }
  int dim() const { return d_; }
  const std::string& name() const { return name_; }
  DerivativeKind derivative_kind() const { return deriv_kind_; }
  const DomainBox& domain_box() const { return box_; }

  int a_index(int al, int be, int j, int k) const { return ((al * N_ + be) * d_ + j) * d_ + k; }
  int phi_index(int al, int j) const { return al * d_ + j; }
  int a_size() const { return N_ * N_ * d_ * d_; }
  int phi_size() const { return N_ * d_; }

  virtual void diffusion(std::span<const double> x, std::span<const double> u,
                         std::span<double> out) const = 0;
  virtual void convection(std::span<const double> x, std::span<const double> u,
                          std::span<double> out) const = 0;
  virtual void reaction(std::span<const double> x, std::span<const double> u,
                        std::span<double> out) const = 0;

  /// dA^{jk}_{ab}/du_c -> out[a_index(a,b,j,k)*N + c]
  virtual void diffusion_du(std::span<const double> x, std::span<const double> u,
                            std::span<double> out) const = 0;
  /// dphi^j_a/du_c -> out[phi_index(a,j)*N + c]
  virtual void convection_du(std::span<const double> x, std::span<const double> u,
                             std::span<double> out) const = 0;
  /// dphi^j_a/dx_l -> out[phi_index(a,j)*d + l]
  virtual void convection_dx(std::span<const double> x, std::span<const double> u,
                             std::span<double> out) const = 0;
  /// dg_a/du_c -> out[a*N + c]
  virtual void reaction_du(std::span<const double> x, std::span<const double> u,
                           std::span<double> out) const = 0;

 protected:
  CoefficientModel(int N, int d, std::string name, DerivativeKind k, DomainBox box)
      : N_(N), d_(d), name_(std::move(name)), deriv_kind_(k), box_(std::move(box)) {}

  int N_, d_;
  std::string name_;
  DerivativeKind deriv_kind_;
  DomainBox box_;
};

/// gamma_a(x,u) = sum_j dphi^j_a/dx_j at frozen u; out has size N.
void gamma_alpha(const CoefficientModel& m, std::span<const double> x,
                 std::span<const double> u, std::span<double> out);

struct CatalogParam {
  std::string name;
  double value;  // default
};
struct CatalogEntry {
  std::string name;
  std::vector<CatalogParam> params;
  std::string doc;
};

const std::vector<CatalogEntry>& catalog();

/// Instantiate a catalog model; unknown names, unknown parameters and
/// parameters outside their admissible range raise ModelError.
std::shared_ptr<const CoefficientModel> model_from_catalog(const std::string& name,
                                                           const ParamMap& params = {});

/// Expression-backed model (d = 1 layouts: A is N x N, phi and g have N
/// entries). Derivatives use central differences with step 1e-6.
std::shared_ptr<const CoefficientModel> model_from_expressions(
    int d, int N, const std::vector<std::vector<std::string>>& A,
    const std::vector<std::string>& phi, const std::vector<std::string>& g,
    const ParamMap& params, DomainBox box);

}  // namespace pqlab

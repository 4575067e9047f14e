// Numerical verification of the structural hypotheses a coefficient model
// must satisfy: ellipticity constants, triangularity, decoupling conditions,
// the simplex edge conditions behind the invariant region, and initial/
// boundary data agreement.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "model.hpp"

namespace pqlab {

/// Eigenvalues of a symmetric n x n matrix (row-major), ascending, computed
/// by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n);

struct WorstSite {
  std::vector<double> x, u;
  int h = -1, j = -1, k = -1;
};

struct EllipticityReport {
  double lambda0 = 0.0;      // smallest eigenvalue of the symmetrized form
  double lambda1 = 0.0;      // largest
  double cordes_ratio = 0.0; // lambda0 / lambda1
  int x_samples = 0, u_samples = 0;  // interval counts per axis
  WorstSite min_site, max_site;
};

enum class ConditionId {
  Ellipticity,
  TriangularA21,
  Cond1DA22Du1,
  Cond2DPhi2Du1,
  FC,
  LC,
  GGC,
  FCB,
  Compatibility,
};

const char* to_string(ConditionId id);
std::optional<ConditionId> condition_from_string(const std::string& s);

struct ConditionReport {
  ConditionId id{};
  bool pass = false;
  double worst_residual = 0.0;
  WorstSite worst_site;
  double tolerance = 0.0;
  std::string note;
  std::map<std::string, double> aux;  // e.g. lambda0, mu_min
};

enum class SumEdge { One, Zero };  // which {u1+u2 = const} edge the flux-sum check uses

struct CheckOptions {
  int x_samples = 32;     // intervals per x axis
  int u_samples = 64;     // intervals per u axis
  int edge_samples = 256; // intervals along a simplex edge
  SumEdge sum_edge = SumEdge::One;
  std::optional<double> tolerance;  // default: 1e-8 analytic, 1e-5 expression models
};

/// lambda0/lambda1 over the model's domain box; sample counts are intervals
/// per axis (>= 1). Non-finite coefficient samples raise ModelError.
EllipticityReport estimate_ellipticity(const CoefficientModel& m, int x_samples, int u_samples);

/// One structural check. FC/LC/GGC/FCB require N = 2; FCB requires d = 1.
ConditionReport check_structural(const CoefficientModel& m, ConditionId id,
                                 const CheckOptions& opt = {});

/// Dirichlet agreement u0(boundary) = u_b(0, boundary); flux-type components
/// are vacuous. u0 boundary values by linear extrapolation from cell averages.
ConditionReport check_compatibility(const StateField& u0, const Grid1D& grid,
                                    const BoundarySpec& bc, double tol = 1e-8);

/// All nine checks in a fixed order; compatibility runs only when run data is
/// supplied and is reported vacuous otherwise.
struct SuiteContext {
  const StateField* u0 = nullptr;
  const Grid1D* grid = nullptr;
  const BoundarySpec* bc = nullptr;
};
std::vector<ConditionReport> run_condition_suite(const CoefficientModel& m,
                                                 const CheckOptions& opt = {},
                                                 const SuiteContext& ctx = {});

}  // namespace pqlab

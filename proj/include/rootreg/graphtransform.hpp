#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rootreg/gridfn.hpp"
#include "rootreg/matrix.hpp"
#include "rootreg/rng.hpp"

namespace rootreg {

// Near-hyperbolic block map f = T + phi on E1 + E2 with T = diag(A1, A2),
// ||A2|| <= lambda < 1 - eps <= ||A1^{-1}||^{-1}, ||A1|| <= mu and
// Lip(phi) <= delta (certified by construction).  Norm: max of the factor
// Euclidean norms.
struct HyperbolicBlockMap {
  int d1 = 1, d2 = 1;
  Matrix<double> a1, a2;
  std::function<std::vector<double>(const std::vector<double>&)> nonlinearity;  // f - T
  double delta = 0;   // certified Lipschitz bound for f - T
  double lambda = 0;  // >= ||A2||
  double eps = 0;     // ||A1^{-1}||^{-1} >= 1 - eps
  double mu = 1;      // >= ||A1||

  std::vector<double> apply(const std::vector<double>& xy) const;
  std::vector<double> f1(const std::vector<double>& xy) const;  // E1 component
  std::vector<double> f2(const std::vector<double>& xy) const;  // E2 component

  // checks the norm hypotheses (exactly computable singular values at
  // these dimensions) and f(0) = 0
  void validate() const;
  // delta < min{ 1/(1-eps), (1-eps-lambda)/2 }
  bool contraction_hypotheses() const;
};

// Lipschitz graph sigma: W -> E2 over the Euclidean ball W = E1(radius),
// sampled on a tensor grid with a validity mask.
struct GraphFunction {
  GridFn grid;           // dim_in = d1, dim_out = d2; box radius >= domain_radius
  double domain_radius;  // W = E1(domain_radius)
  double lip_bound;      // certified or measured; <= 1 for transform inputs

  static GraphFunction sample(int d1, int d2, double radius, int nodes_per_axis,
                              const std::function<std::vector<double>(const std::vector<double>&)>& sigma,
                              double lip_bound);
  bool contains(const std::vector<double>& x) const;  // inside W and valid
};

struct TransformStats {
  double measured_lip = 0;        // over grid-neighbor and random far pairs
  double measured_lip_ginv = 0;   // Lip(g_sigma^{-1}) on samples
  int inversion_failures = 0;     // nodes where the damped solve stalled
  double domain_inner = 0;        // largest verified ball inside the image
  double domain_outer = 0;        // box radius of the new grid
};

// One graph-transform step: domain travels to g_sigma(W) and values to
// f2 . (Id, sigma) . g_sigma^{-1}; inversion by damped fixed point with
// certified residual <= 1e-10 per node.  Throws when the delta hypothesis
// fails; per-node inversion failures are counted in the stats.
GraphFunction graph_transform(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                              TransformStats* stats = nullptr, int nodes_per_axis = 0);

struct DomainBoundsReport {
  int samples = 0;
  std::vector<std::vector<double>> inner_violations;  // points of E1(k1(1-eps-delta)) missed
  std::vector<std::vector<double>> outer_violations;  // images outside E1(k2(mu+delta))
  bool ok() const { return inner_violations.empty() && outer_violations.empty(); }
};

// Boundary-sampled verification of
//   E1(k1 (1-eps-delta)) in g_sigma(W) in E1(k2 (mu+delta))
// for E1(k1) in W in E1(k2).
DomainBoundsReport domain_bounds_check(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                                       double kappa1, double kappa2, int samples,
                                       std::uint64_t seed);

struct PointwiseStats {
  int samples = 0;
  int skipped = 0;         // f1(x,y) outside the transformed domain
  double max_ratio = 0;    // |f2(x,y) - (Gs)(f1(x,y))| / ((lambda+2delta) |y - sigma(x)|)
};

// Sampled check of the pointwise contraction estimate.
PointwiseStats pointwise_contract_check(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                                        const GraphFunction& transformed, int samples,
                                        std::uint64_t seed);

struct IterationStep {
  int step = 0;
  double domain_radius = 0;  // verified common-domain radius
  double distance = 0;       // sup |G^k s1 - G^k s2| there
  double ratio = 0;          // distance_k / distance_{k-1}
};

struct IterationLog {
  std::vector<IterationStep> steps;
  int collapsed_at = -1;  // step where the common domain emptied, -1 if never
  std::string to_json() const;
};

// n-step contraction log for two initial graphs under a sequence of maps
// sharing the constants.  Requires the nesting window
//   W1 in E1(kappa (mu+2delta)^{-n} (1-eps-delta)^n), E1(kappa) in W2.
IterationLog iterate_graph_transform(const std::vector<HyperbolicBlockMap>& maps,
                                     const GraphFunction& sigma1, const GraphFunction& sigma2,
                                     int n, double kappa);

// Seeded instance generator: split dims (d1, d2), singular values inside
// the declared bands, smooth nonlinearity with certified Lipschitz bound.
HyperbolicBlockMap random_hyperbolic_map(int d1, int d2, double lambda, double eps, double mu,
                                         double delta, Rng& rng);

}  // namespace rootreg

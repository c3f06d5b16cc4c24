#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rootreg/gridfn.hpp"
#include "rootreg/jets.hpp"

namespace rootreg {

struct JetConjugacy {
  JetPolynomial h;            // H_1 = id and H . f_jet = (L + residue) . H through degree d
  JetPolynomial residue;      // unremovable resonant terms; zero iff exact
  bool exact = false;
  int first_obstructed_degree = 0;  // 0 when exact
};

// Degree-by-degree conjugacy jets against a diagonal contraction.
// `multipliers` are the diagonal entries of L in coordinate order (the
// exponentials of the declared weights; only their exact rational values
// enter).  In strict mode a nonzero resonant residue throws, carrying the
// first failing degree.
JetConjugacy solve_jet_conjugacy(const std::vector<Rational>& multipliers,
                                 const LyapunovWeights& weights, const JetPolynomial& f_jet,
                                 int degree, bool strict = true);

struct TailStep {
  int step = 0;
  double distance = 0;  // sup |R_k - R_{k-1}|
  double ratio = 0;     // distance_k / distance_{k-1}
};

struct TailResult {
  GridFn tail;
  double kappa = 0;
  std::vector<TailStep> log;
  int iterations = 0;
};

// Fixed point of T(R) = L^{-1} . R . f + L^{-1} R0 on the sampled ball.
// Rejects parameter sets with kappa = exp(-l1 + e + s*ll + s*e + e) >= 1
// before iterating; throws on non-convergence within the budget.
TailResult tail_fixed_point(const std::vector<Rational>& multipliers,
                            const std::function<std::vector<double>(const std::vector<double>&)>& f,
                            const GridFn& r0, int d, double alpha, double epsilon,
                            int max_iterations = 400, double tol = 1e-13);

// The same fixed point evaluated as the series sum_n L^{-(n+1)} R0(f^n x)
// (the iterates of T from 0), with R0 supplied in closed form.  Per-node
// orbits avoid re-interpolating R, which keeps the evaluation stable when
// ||L^{-1}|| times the slowest contraction rate exceeds 1 -- the regime
// where the sampled-grid recursion amplifies its own interpolation noise.
// The log records sup |term_n| per step.
TailResult tail_series(const std::vector<Rational>& multipliers,
                       const std::function<std::vector<double>(const std::vector<double>&)>& f,
                       const std::function<std::vector<double>(const std::vector<double>&)>& r0,
                       const GridFn& shape, int d, double alpha, double epsilon,
                       int max_terms = 400, double tol = 1e-13);

struct ConjugacyResult {
  JetPolynomial hbar;
  GridFn tail;
  double kappa = 0;
  double epsilon = 0;
  double residual_sup = 0;   // sup over grid and midpoints of |hhat(f(x)) - L hhat(x)|
  double sup_dist_id = 0;    // sup |hhat(x) - x|
  double f_dist_sup = 0;     // sup |f(x) - Lx| on the grid
  std::vector<TailStep> tail_log;

  std::string to_json() const;
};

// Assemble hhat = hbar + R for a contraction f close to its linear part:
// conjugacy jets, then the tail fixed point, then the residual report.
// s = d + alpha > (largest weight ratio); epsilon <= 0 requests the
// default min(0.01, (l1 - s*ll) / (2(s+2))); eta bounds the sampled
// sup distance |f - L| on the unit ball (precondition).
// When f is exactly the polynomial f_jet, pass exact_polynomial_f = true:
// R0 = hbar . f - L . hbar is then expanded exactly over the rationals and
// the tail is computed by the stable series path.
ConjugacyResult build_conjugacy(
    const std::vector<Rational>& multipliers, const LyapunovWeights& weights,
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    const JetPolynomial& f_jet, double s, int nodes_per_axis = 2001, double epsilon = -1,
    double eta = 0.25, bool exact_polynomial_f = false);

}  // namespace rootreg

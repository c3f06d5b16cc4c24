#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rootreg/matrix.hpp"
#include "rootreg/rational.hpp"
#include "rootreg/rng.hpp"

namespace rootreg {

// Weights are negative rationals; only ratios matter (a common positive
// rescaling changes neither the subresonance inequalities nor the degree
// bound), so exact rational values are enough.
struct LyapunovWeights {
  std::vector<Rational> values;  // strictly increasing, all < 0
  std::vector<int> multiplicities;

  int total_dim() const;
  std::vector<Rational> coordinate_weights() const;  // expanded per coordinate
  void validate() const;
  bool operator==(const LyapunovWeights&) const = default;
};

using MultiIndex = std::vector<int>;  // exponents per input coordinate

int multi_degree(const MultiIndex& a);

// Largest possible degree of a subresonant map: floor(eta_1 / lambda_l).
int subresonant_degree_bound(const LyapunovWeights& in_w, const LyapunovWeights& out_w);

// eta_j <= sum_i alpha_i * lambda_i
bool monomial_subresonant(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                          int component, const MultiIndex& alpha);

struct BasisEntry {
  int component;
  MultiIndex alpha;
  bool operator==(const BasisEntry&) const = default;
};

struct SubresonantBasis {
  LyapunovWeights in_w, out_w;
  std::vector<BasisEntry> entries;  // nonconstant monomials, sorted
  bool with_constants = false;      // constants are all admissible (weights <= 0)
  int dimension() const {
    return static_cast<int>(entries.size()) + (with_constants ? out_w.total_dim() : 0);
  }
};

SubresonantBasis subresonant_basis(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                                   bool include_constants = false);

// Truncated polynomial map with graded coordinates.  Coefficients live on
// (component, multi-index) pairs with 1 <= |alpha| <= degree, plus an
// optional constant vector.  `subresonant` records whether every stored
// coefficient satisfies the weight inequality.
struct JetPolynomial {
  LyapunovWeights in_w, out_w;
  int degree = 1;
  std::vector<Rational> constant;                    // out-dim entries
  std::vector<std::map<MultiIndex, Rational>> coeffs;  // per output component

  int in_dim() const { return in_w.total_dim(); }
  int out_dim() const { return out_w.total_dim(); }

  static JetPolynomial zero(const LyapunovWeights& in_w, const LyapunovWeights& out_w, int degree);
  static JetPolynomial identity(const LyapunovWeights& w, int degree);
  static JetPolynomial from_linear(const Matrix<Rational>& m, const LyapunovWeights& in_w,
                                   const LyapunovWeights& out_w, int degree);

  void set(int component, const MultiIndex& alpha, const Rational& c);
  Rational get(int component, const MultiIndex& alpha) const;
  Matrix<Rational> linear_part() const;
  JetPolynomial homogeneous_part(int k) const;  // degrees other than k dropped

  bool is_subresonant() const;  // constants count as admissible
  bool is_zero() const;

  std::vector<Rational> eval(const std::vector<Rational>& x) const;
  std::vector<double> eval(const std::vector<double>& x) const;

  bool operator==(const JetPolynomial&) const = default;
  std::string to_string() const;
};

// Truncated composition g . f (coefficients of g(f(x)) through the common
// degree).  Requires f.out_w == g.in_w and equal truncation degrees; when
// both inputs are subresonant the result is checked to be subresonant too.
JetPolynomial jet_compose(const JetPolynomial& g, const JetPolynomial& f);

// Inverse jet via the degree-by-degree recursion
//   G_1 = E_1^{-1},  G_k = -(sum of lower-order compositions) . (E_1^{-1})x k;
// the result is a two-sided inverse in the truncated-jet group.  Requires
// constant-free input with invertible linear part.
JetPolynomial jet_invert(const JetPolynomial& e);

// Seeded subresonant jet with coefficients from a small dyadic pool;
// linear part forced invertible when `invertible` (requires equal weight
// layouts on both sides).
JetPolynomial random_subresonant_jet(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                                     Rng& rng, bool invertible);

struct EvaluationFrame {
  bool certified = false;
  std::vector<std::vector<Rational>> points;
  int achieved_rank = 0;
  int required_rank = 0;
};

// Point set in the ball of the given radius on which subresonant maps of
// the given basis are determined by their values: certified by exact rank
// of the per-component evaluation matrices.  Retries with fresh samples up
// to `retries`.
EvaluationFrame evaluation_frame(const SubresonantBasis& basis, const Rational& radius,
                                 int candidate_count, std::uint64_t seed, int retries = 8);

// Same certificate for caller-supplied points (degenerate sets fail).
EvaluationFrame evaluation_frame_from_points(const SubresonantBasis& basis,
                                             const std::vector<std::vector<Rational>>& points);

}  // namespace rootreg

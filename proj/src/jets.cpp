#include "rootreg/jets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rootreg {

int LyapunovWeights::total_dim() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

std::vector<Rational> LyapunovWeights::coordinate_weights() const {
  std::vector<Rational> out;
  for (size_t i = 0; i < values.size(); ++i)
    for (int k = 0; k < multiplicities[i]; ++k) out.push_back(values[i]);
  return out;
}

void LyapunovWeights::validate() const {
  if (values.empty() || values.size() != multiplicities.size())
    throw std::invalid_argument("LyapunovWeights: shape mismatch");
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= 0) throw std::invalid_argument("LyapunovWeights: weights must be negative");
    if (i && values[i - 1] >= values[i])
      throw std::invalid_argument("LyapunovWeights: weights must be strictly increasing");
    if (multiplicities[i] <= 0)
      throw std::invalid_argument("LyapunovWeights: multiplicities must be positive");
  }
}

int multi_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

int subresonant_degree_bound(const LyapunovWeights& in_w, const LyapunovWeights& out_w) {
  Rational eta1 = out_w.values.front();        // most negative output weight
  Rational lambda_l = in_w.values.back();      // least negative input weight
  return static_cast<int>(floor_int(eta1 / lambda_l));
}

bool monomial_subresonant(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                          int component, const MultiIndex& alpha) {
  auto in_coord = in_w.coordinate_weights();
  auto out_coord = out_w.coordinate_weights();
  Rational s = 0;
  for (size_t i = 0; i < alpha.size(); ++i) s += Rational(alpha[i]) * in_coord[i];
  return out_coord[component] <= s;
}

namespace {

void enumerate_multiindices(int nvars, int degree, MultiIndex& cur, int pos, int left,
                            std::vector<MultiIndex>& out) {
  if (pos == nvars) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[pos] = k;
    enumerate_multiindices(nvars, degree, cur, pos + 1, left - k, out);
  }
  cur[pos] = 0;
}

std::vector<MultiIndex> multiindices_of_degree(int nvars, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(nvars, 0);
  enumerate_multiindices(nvars, degree, cur, 0, degree, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubresonantBasis subresonant_basis(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                                   bool include_constants) {
  in_w.validate();
  out_w.validate();
  SubresonantBasis b;
  b.in_w = in_w;
  b.out_w = out_w;
  b.with_constants = include_constants;
  int d = subresonant_degree_bound(in_w, out_w);
  int n = in_w.total_dim(), p = out_w.total_dim();
  for (int deg = 1; deg <= d; ++deg)
    for (const auto& a : multiindices_of_degree(n, deg))
      for (int j = 0; j < p; ++j)
        if (monomial_subresonant(in_w, out_w, j, a)) b.entries.push_back({j, a});
  std::sort(b.entries.begin(), b.entries.end(), [](const BasisEntry& x, const BasisEntry& y) {
    return std::tie(x.component, x.alpha) < std::tie(y.component, y.alpha);
  });
  return b;
}

JetPolynomial JetPolynomial::zero(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                                  int degree) {
  in_w.validate();
  out_w.validate();
  if (degree < 1) throw std::invalid_argument("jet degree must be >= 1");
  JetPolynomial j;
  j.in_w = in_w;
  j.out_w = out_w;
  j.degree = degree;
  j.constant.assign(out_w.total_dim(), Rational(0));
  j.coeffs.resize(out_w.total_dim());
  return j;
}

JetPolynomial JetPolynomial::identity(const LyapunovWeights& w, int degree) {
  JetPolynomial j = zero(w, w, degree);
  int n = w.total_dim();
  for (int i = 0; i < n; ++i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    j.coeffs[i][a] = 1;
  }
  return j;
}

JetPolynomial JetPolynomial::from_linear(const Matrix<Rational>& m, const LyapunovWeights& in_w,
                                         const LyapunovWeights& out_w, int degree) {
  JetPolynomial j = zero(in_w, out_w, degree);
  if (m.rows() != j.out_dim() || m.cols() != j.in_dim())
    throw std::invalid_argument("from_linear: shape mismatch");
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k)
      if (m(i, k) != 0) {
        MultiIndex a(m.cols(), 0);
        a[k] = 1;
        j.coeffs[i][a] = m(i, k);
      }
  return j;
}

void JetPolynomial::set(int component, const MultiIndex& alpha, const Rational& c) {
  int deg = multi_degree(alpha);
  if (deg < 1 || deg > degree) throw std::invalid_argument("jet coefficient degree out of range");
  if (c == 0) coeffs[component].erase(alpha);
  else coeffs[component][alpha] = c;
}

Rational JetPolynomial::get(int component, const MultiIndex& alpha) const {
  auto it = coeffs[component].find(alpha);
  return it == coeffs[component].end() ? Rational(0) : it->second;
}

Matrix<Rational> JetPolynomial::linear_part() const {
  Matrix<Rational> m(out_dim(), in_dim());
  for (int j = 0; j < out_dim(); ++j)
    for (const auto& [a, c] : coeffs[j])
      if (multi_degree(a) == 1)
        for (int i = 0; i < in_dim(); ++i)
          if (a[i] == 1) m(j, i) = c;
  return m;
}

JetPolynomial JetPolynomial::homogeneous_part(int k) const {
  JetPolynomial out = zero(in_w, out_w, degree);
  for (int j = 0; j < out_dim(); ++j)
    for (const auto& [a, c] : coeffs[j])
      if (multi_degree(a) == k) out.coeffs[j][a] = c;
  return out;
}

bool JetPolynomial::is_subresonant() const {
  for (int j = 0; j < out_dim(); ++j)
    for (const auto& [a, c] : coeffs[j]) {
      (void)c;
      if (!monomial_subresonant(in_w, out_w, j, a)) return false;
    }
  return true;  // constants are admissible: all output weights are negative
}

bool JetPolynomial::is_zero() const {
  if (std::any_of(constant.begin(), constant.end(), [](const Rational& c) { return c != 0; }))
    return false;
  for (const auto& m : coeffs)
    if (!m.empty()) return false;
  return true;
}

template <class T>
static std::vector<T> eval_impl(const JetPolynomial& j, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != j.in_dim())
    throw std::invalid_argument("jet eval: arity mismatch");
  std::vector<T> out(j.out_dim());
  for (int c = 0; c < j.out_dim(); ++c) {
    if constexpr (std::is_same_v<T, double>) out[c] = to_double(j.constant[c]);
    else out[c] = j.constant[c];
  }
  for (int c = 0; c < j.out_dim(); ++c)
    for (const auto& [a, coef] : j.coeffs[c]) {
      T term;
      if constexpr (std::is_same_v<T, double>) term = to_double(coef);
      else term = coef;
      for (size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < a[i]; ++k) term *= x[i];
      out[c] += term;
    }
  return out;
}

std::vector<Rational> JetPolynomial::eval(const std::vector<Rational>& x) const {
  return eval_impl(*this, x);
}
std::vector<double> JetPolynomial::eval(const std::vector<double>& x) const {
  return eval_impl(*this, x);
}

std::string JetPolynomial::to_string() const {
  std::ostringstream out;
  for (int j = 0; j < out_dim(); ++j) {
    out << "y" << j << " =";
    bool any = false;
    if (constant[j] != 0) { out << " " << rootreg::to_string(constant[j]); any = true; }
    for (const auto& [a, c] : coeffs[j]) {
      out << (any ? " + " : " ") << rootreg::to_string(c) << " x^(";
      for (size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
      out << ")";
      any = true;
    }
    if (!any) out << " 0";
    out << "\n";
  }
  return out.str();
}

namespace {

using Poly = std::map<MultiIndex, Rational>;  // includes the zero multi-index

Poly poly_mul(const Poly& a, const Poly& b, int max_degree) {
  Poly out;
  for (const auto& [ia, ca] : a) {
    int da = multi_degree(ia);
    for (const auto& [ib, cb] : b) {
      if (da + multi_degree(ib) > max_degree) continue;
      MultiIndex m(ia.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ia[i] + ib[i];
      Rational c = ca * cb;
      auto [it, fresh] = out.try_emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace

JetPolynomial jet_compose(const JetPolynomial& g, const JetPolynomial& f) {
  if (!(f.out_w == g.in_w))
    throw std::invalid_argument("jet_compose: inner output weights != outer input weights");
  if (f.degree != g.degree)
    throw std::invalid_argument("jet_compose: truncation degrees differ");
  const int d = g.degree;
  const int n = f.in_dim();

  // each component of f as a full truncated polynomial (with constant)
  std::vector<Poly> fp(f.out_dim());
  for (int c = 0; c < f.out_dim(); ++c) {
    if (f.constant[c] != 0) fp[c][MultiIndex(n, 0)] = f.constant[c];
    for (const auto& [a, coef] : f.coeffs[c])
      if (multi_degree(a) <= d) fp[c][a] = coef;
  }

  JetPolynomial h = JetPolynomial::zero(f.in_w, g.out_w, d);
  for (int j = 0; j < g.out_dim(); ++j) {
    Poly acc;
    if (g.constant[j] != 0) acc[MultiIndex(n, 0)] = g.constant[j];
    for (const auto& [beta, coef] : g.coeffs[j]) {
      if (multi_degree(beta) > d) continue;
      Poly term;
      term[MultiIndex(n, 0)] = coef;
      for (int i = 0; i < g.in_dim(); ++i)
        for (int rep = 0; rep < beta[i]; ++rep) term = poly_mul(term, fp[i], d);
      for (const auto& [a, c] : term) {
        auto [it, fresh] = acc.try_emplace(a, c);
        if (!fresh) {
          it->second += c;
          if (it->second == 0) acc.erase(it);
        }
      }
    }
    for (const auto& [a, c] : acc) {
      if (multi_degree(a) == 0) h.constant[j] = c;
      else h.coeffs[j][a] = c;
    }
  }

  // closure: the composition of subresonant jets stays subresonant exactly
  if (f.is_subresonant() && g.is_subresonant() && !h.is_subresonant())
    throw std::logic_error("jet_compose: forbidden coefficient in subresonant composition");
  return h;
}

JetPolynomial jet_invert(const JetPolynomial& e) {
  for (const auto& c : e.constant)
    if (c != 0) throw std::invalid_argument("jet_invert: jet must fix the origin");
  if (e.in_dim() != e.out_dim()) throw std::invalid_argument("jet_invert: dimensions differ");
  Matrix<Rational> e1 = e.linear_part();
  Matrix<Rational> e1_inv;
  try {
    e1_inv = e1.inverse();
  } catch (const std::domain_error&) {
    throw std::invalid_argument("jet_invert: singular linear part");
  }
  const int d = e.degree;

  JetPolynomial g = JetPolynomial::from_linear(e1_inv, e.out_w, e.in_w, d);
  for (int k = 2; k <= d; ++k) {
    // residue of the partial inverse: (g . e) = id + (terms of degree >= k)
    JetPolynomial comp = jet_compose(g, e);
    JetPolynomial res = comp.homogeneous_part(k);
    if (res.is_zero()) continue;
    // g_k = -res_k . (E_1^{-1})^(x)k, substituted exactly
    JetPolynomial lin = JetPolynomial::from_linear(e1_inv, e.out_w, e.in_w, d);
    JetPolynomial corr = jet_compose(res, lin);
    for (int j = 0; j < g.out_dim(); ++j)
      for (const auto& [a, c] : corr.coeffs[j]) {
        auto [it, fresh] = g.coeffs[j].try_emplace(a, Rational(-c));
        if (!fresh) {
          it->second -= c;
          if (it->second == 0) g.coeffs[j].erase(it);
        }
      }
  }
  return g;
}

JetPolynomial random_subresonant_jet(const LyapunovWeights& in_w, const LyapunovWeights& out_w,
                                     Rng& rng, bool invertible) {
  SubresonantBasis basis = subresonant_basis(in_w, out_w, false);
  int d = std::max(1, subresonant_degree_bound(in_w, out_w));
  JetPolynomial j = JetPolynomial::zero(in_w, out_w, d);
  auto coef = [&]() { return Rational(static_cast<int>(rng.below(17)) - 8, 4); };
  for (const auto& be : basis.entries) {
    Rational c = coef();
    if (c != 0 && rng.below(4) != 0) j.coeffs[be.component][be.alpha] = c;
  }
  if (invertible) {
    if (!(in_w == out_w))
      throw std::invalid_argument("random_subresonant_jet: invertible needs equal weights");
    // overwrite the linear part with a guaranteed-invertible subresonant
    // one: in the weight-graded basis admissible entries form a block
    // triangle, so a unitriangular fill of each diagonal block suffices
    int n = in_w.total_dim();
    auto wts = in_w.coordinate_weights();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        MultiIndex a(n, 0);
        a[c] = 1;
        j.coeffs[r].erase(a);
        if (wts[r] > wts[c]) continue;  // forbidden entry
        if (r == c) {
          j.coeffs[r][a] = Rational(1 + static_cast<int>(rng.below(4)));
        } else if (wts[r] < wts[c] || r < c) {
          Rational v = coef();
          if (v != 0) j.coeffs[r][a] = v;
        }
      }
  }
  return j;
}

namespace {

int exact_rank(Matrix<Rational> m) {
  int rank = 0;
  int rows = m.rows(), cols = m.cols();
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (m(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
    for (int i = rank + 1; i < rows; ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(rank, col);
      for (int j = col; j < cols; ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

EvaluationFrame certify_points(const SubresonantBasis& basis,
                               const std::vector<std::vector<Rational>>& pts) {
  EvaluationFrame fr;
  fr.points = pts;
  const int p = static_cast<int>(pts.size());
  const int out_dim = basis.out_w.total_dim();
  fr.required_rank = basis.dimension();
  fr.achieved_rank = 0;
  bool all_full = true;
  for (int j = 0; j < out_dim; ++j) {
    std::vector<MultiIndex> mons;
    for (const auto& be : basis.entries)
      if (be.component == j) mons.push_back(be.alpha);
    int cols = static_cast<int>(mons.size()) + (basis.with_constants ? 1 : 0);
    if (cols == 0) continue;
    Matrix<Rational> m(p, cols);
    for (int i = 0; i < p; ++i) {
      for (size_t k = 0; k < mons.size(); ++k) {
        Rational v = 1;
        for (size_t t = 0; t < mons[k].size(); ++t)
          for (int rep = 0; rep < mons[k][t]; ++rep) v *= pts[i][t];
        m(i, static_cast<int>(k)) = v;
      }
      if (basis.with_constants) m(i, cols - 1) = 1;
    }
    int rk = exact_rank(m);
    fr.achieved_rank += rk;
    if (rk < cols) all_full = false;
  }
  fr.certified = all_full;
  return fr;
}

}  // namespace

EvaluationFrame evaluation_frame(const SubresonantBasis& basis, const Rational& radius,
                                 int candidate_count, std::uint64_t seed, int retries) {
  if (radius <= 0) throw std::invalid_argument("evaluation_frame: radius must be positive");
  Rng rng(seed);
  const int n = basis.in_w.total_dim();
  EvaluationFrame last;
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<std::vector<Rational>> pts;
    while (static_cast<int>(pts.size()) < candidate_count) {
      std::vector<Rational> x(n);
      Rational norm2 = 0;
      for (int i = 0; i < n; ++i) {
        x[i] = radius * Rational(static_cast<int>(rng.below(129)) - 64, 64);
        norm2 += x[i] * x[i];
      }
      if (norm2 > radius * radius) continue;  // keep inside the ball
      pts.push_back(std::move(x));
    }
    last = certify_points(basis, pts);
    if (last.certified) return last;
  }
  return last;  // rank deficiency after retries: certified = false
}

EvaluationFrame evaluation_frame_from_points(const SubresonantBasis& basis,
                                             const std::vector<std::vector<Rational>>& points) {
  return certify_points(basis, points);
}

}  // namespace rootreg

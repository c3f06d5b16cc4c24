#include "rootreg/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rootreg {

namespace {

Rational multiplier_power(const std::vector<Rational>& mu, const MultiIndex& a) {
  Rational out = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i]; ++k) out *= mu[i];
  return out;
}

}  // namespace

JetConjugacy solve_jet_conjugacy(const std::vector<Rational>& multipliers,
                                 const LyapunovWeights& weights, const JetPolynomial& f_jet,
                                 int degree, bool strict) {
  weights.validate();
  const int n = weights.total_dim();
  if (static_cast<int>(multipliers.size()) != n)
    throw std::invalid_argument("solve_jet_conjugacy: multiplier count != dimension");
  for (const auto& m : multipliers)
    if (m <= 0 || m >= 1)
      throw std::invalid_argument("solve_jet_conjugacy: multipliers must lie in (0,1)");
  if (f_jet.in_dim() != n || f_jet.out_dim() != n)
    throw std::invalid_argument("solve_jet_conjugacy: jet dimension mismatch");
  for (const auto& c : f_jet.constant)
    if (c != 0) throw std::invalid_argument("solve_jet_conjugacy: f_jet(0) != 0");

  Matrix<Rational> ldiag(n, n);
  for (int i = 0; i < n; ++i) ldiag(i, i) = multipliers[i];
  // the exact solve below assumes the linear part of f equals L
  if (!(f_jet.linear_part() == ldiag))
    throw std::invalid_argument("solve_jet_conjugacy: linear part of f_jet must equal L");

  JetPolynomial fbar = JetPolynomial::zero(weights, weights, degree);
  for (int j = 0; j < n; ++j)
    for (const auto& [a, c] : f_jet.coeffs[j])
      if (multi_degree(a) <= degree) fbar.coeffs[j][a] = c;
  JetPolynomial h = JetPolynomial::identity(weights, degree);
  JetPolynomial lbar = JetPolynomial::from_linear(ldiag, weights, weights, degree);
  JetPolynomial normal = lbar;  // L plus the accumulated resonant residue
  JetConjugacy out;

  for (int k = 2; k <= degree; ++k) {
    JetPolynomial lhs = jet_compose(h, fbar);
    JetPolynomial rhs = jet_compose(normal, h);
    JetPolynomial defect_k = JetPolynomial::zero(weights, weights, degree);
    bool any = false;
    for (int j = 0; j < n; ++j) {
      for (const auto& [a, c] : lhs.coeffs[j]) {
        if (multi_degree(a) != k) continue;
        Rational d = c - rhs.get(j, a);
        if (d != 0) { defect_k.coeffs[j][a] = d; any = true; }
      }
      for (const auto& [a, c] : rhs.coeffs[j]) {
        if (multi_degree(a) != k || lhs.coeffs[j].count(a)) continue;
        defect_k.coeffs[j][a] = -c;
        any = true;
      }
    }
    if (!any) continue;
    // homological equation per coefficient: (mu_j - mu^alpha) h_{j,alpha}
    // + n_{j,alpha} = defect; resonant coefficients go to the residue and
    // h takes the minimal-norm (zero) component there
    for (int j = 0; j < n; ++j)
      for (const auto& [a, c] : defect_k.coeffs[j]) {
        Rational gap = multipliers[j] - multiplier_power(multipliers, a);
        if (gap == 0) {
          normal.coeffs[j][a] += c;
          if (normal.coeffs[j][a] == 0) normal.coeffs[j].erase(a);
          if (out.first_obstructed_degree == 0) out.first_obstructed_degree = k;
        } else {
          h.coeffs[j][a] += c / gap;
          if (h.coeffs[j][a] == 0) h.coeffs[j].erase(a);
        }
      }
  }

  // verification: H . fbar = (L + residue) . H exactly through the degree
  if (!(jet_compose(h, fbar) == jet_compose(normal, h)))
    throw std::logic_error("solve_jet_conjugacy: verification failed");

  out.h = std::move(h);
  out.residue = JetPolynomial::zero(weights, weights, degree);
  for (int j = 0; j < n; ++j)
    for (const auto& [a, c] : normal.coeffs[j])
      if (multi_degree(a) >= 2) out.residue.coeffs[j][a] = c;
  out.exact = out.residue.is_zero();
  if (strict && !out.exact)
    throw std::runtime_error(
        "solve_jet_conjugacy: f_jet is not conjugate to L through degree " +
        std::to_string(degree) + " (first obstructed degree " +
        std::to_string(out.first_obstructed_degree) + ")");
  return out;
}

namespace {

struct LogRates {
  double l1;  // most negative
  double ll;  // least negative
};

LogRates log_rates(const std::vector<Rational>& multipliers) {
  double lmin = 0, lmax = -1e300;
  for (const auto& m : multipliers) {
    double lg = std::log(to_double(m));
    lmin = std::min(lmin, lg);
    lmax = std::max(lmax, lg);
  }
  return {lmin, lmax};
}

}  // namespace

TailResult tail_fixed_point(const std::vector<Rational>& multipliers,
                            const std::function<std::vector<double>(const std::vector<double>&)>& f,
                            const GridFn& r0, int d, double alpha, double epsilon,
                            int max_iterations, double tol) {
  const int n = static_cast<int>(multipliers.size());
  if (r0.dim_in() != n || r0.dim_out() != n)
    throw std::invalid_argument("tail_fixed_point: grid dimension mismatch");
  if (alpha < 0 || alpha >= 1) throw std::invalid_argument("tail_fixed_point: alpha in [0,1)");
  if (epsilon <= 0) throw std::invalid_argument("tail_fixed_point: epsilon must be positive");

  const double s = d + alpha;
  LogRates lr = log_rates(multipliers);
  TailResult out;
  out.kappa = std::exp(-lr.l1 + epsilon + s * lr.ll + s * epsilon + epsilon);
  if (out.kappa >= 1)
    throw std::invalid_argument("tail_fixed_point: kappa = " + std::to_string(out.kappa) +
                                " >= 1, contraction hypothesis violated");

  // f(0) = 0 and R0 vanishing to order d at 0, within grid resolution
  {
    std::vector<double> zero(n, 0.0), f0 = f(zero);
    for (double v : f0)
      if (std::fabs(v) > 1e-12) throw std::invalid_argument("tail_fixed_point: f(0) != 0");
    double scale = 0;
    for (size_t fi = 0; fi < r0.node_count(); ++fi)
      for (double v : r0.node_value(fi)) scale = std::max(scale, std::fabs(v));
    double h = r0.h();
    for (size_t fi = 0; fi < r0.node_count(); ++fi) {
      auto x = r0.node_point(fi);
      double nx = 0;
      for (double v : x) nx = std::max(nx, std::fabs(v));
      if (nx > 4 * h) continue;
      double bound = 100.0 * (scale + 1e-9) * std::pow(nx + h, d);
      for (double v : r0.node_value(fi))
        if (std::fabs(v) > bound)
          throw std::invalid_argument("tail_fixed_point: R0 does not vanish to order d at 0");
    }
  }

  std::vector<double> linv(n);
  for (int i = 0; i < n; ++i) linv[i] = 1.0 / to_double(multipliers[i]);

  GridFn r = r0;  // shape carrier; start from R = 0
  for (size_t fi = 0; fi < r.node_count(); ++fi) r.set_node(fi, std::vector<double>(n, 0.0));

  double prev_dist = -1;
  for (int it = 1; it <= max_iterations; ++it) {
    GridFn next = r;
    for (size_t fi = 0; fi < r.node_count(); ++fi) {
      auto x = r.node_point(fi);
      auto fx = f(x);
      for (double v : fx)
        if (std::fabs(v) > r.radius() * (1 + 1e-12))
          throw std::runtime_error("tail_fixed_point: f leaves the sampled ball");
      auto rfx = r.eval(fx);
      if (!rfx) throw std::runtime_error("tail_fixed_point: interpolation failed");
      auto r0x = r0.node_value(fi);
      std::vector<double> v(n);
      for (int c = 0; c < n; ++c) v[c] = linv[c] * ((*rfx)[c] + r0x[c]);
      next.set_node(fi, v);
    }
    double dist = sup_diff(next, r);
    out.log.push_back({it, dist, prev_dist > 0 ? dist / prev_dist : 0.0});
    r = std::move(next);
    out.iterations = it;
    double scale = 1.0;
    for (size_t fi = 0; fi < r.node_count(); ++fi)
      for (double v : r.node_value(fi)) scale = std::max(scale, std::fabs(v));
    // converged, or stalled at the rounding floor of the discrete operator
    bool at_floor = prev_dist > 0 && dist > 0.9 * prev_dist && dist < 1e-9 * scale;
    if (dist < tol * scale || at_floor) {
      out.tail = std::move(r);
      return out;
    }
    prev_dist = dist;
  }
  throw std::runtime_error("tail_fixed_point: no convergence within the iteration budget");
}

TailResult tail_series(const std::vector<Rational>& multipliers,
                       const std::function<std::vector<double>(const std::vector<double>&)>& f,
                       const std::function<std::vector<double>(const std::vector<double>&)>& r0,
                       const GridFn& shape, int d, double alpha, double epsilon, int max_terms,
                       double tol) {
  const int n = static_cast<int>(multipliers.size());
  if (shape.dim_in() != n || shape.dim_out() != n)
    throw std::invalid_argument("tail_series: grid dimension mismatch");
  if (epsilon <= 0) throw std::invalid_argument("tail_series: epsilon must be positive");
  const double s = d + alpha;
  LogRates lr = log_rates(multipliers);
  TailResult out;
  out.kappa = std::exp(-lr.l1 + epsilon + s * lr.ll + s * epsilon + epsilon);
  if (out.kappa >= 1)
    throw std::invalid_argument("tail_series: kappa = " + std::to_string(out.kappa) +
                                " >= 1, contraction hypothesis violated");

  std::vector<double> linv(n);
  for (int i = 0; i < n; ++i) linv[i] = 1.0 / to_double(multipliers[i]);

  GridFn r = shape;
  for (size_t fi = 0; fi < r.node_count(); ++fi) r.set_node(fi, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> orbit(r.node_count());
  for (size_t fi = 0; fi < r.node_count(); ++fi) orbit[fi] = r.node_point(fi);

  std::vector<double> factor(n, 1.0);
  double prev_dist = -1;
  for (int term = 1; term <= max_terms; ++term) {
    for (int c = 0; c < n; ++c) factor[c] *= linv[c];
    double dist = 0, scale = 1.0;
    for (size_t fi = 0; fi < r.node_count(); ++fi) {
      auto v = r.node_value(fi);
      auto r0v = r0(orbit[fi]);
      for (int c = 0; c < n; ++c) {
        double t = factor[c] * r0v[c];
        dist = std::max(dist, std::fabs(t));
        v[c] += t;
        scale = std::max(scale, std::fabs(v[c]));
      }
      r.set_node(fi, v);
      orbit[fi] = f(orbit[fi]);
      for (double x : orbit[fi])
        if (std::fabs(x) > r.radius() * (1 + 1e-9))
          throw std::runtime_error("tail_series: f leaves the sampled ball");
    }
    out.log.push_back({term, dist, prev_dist > 0 ? dist / prev_dist : 0.0});
    out.iterations = term;
    if (dist < tol * scale) {
      out.tail = std::move(r);
      return out;
    }
    prev_dist = dist;
  }
  throw std::runtime_error("tail_series: no convergence within the term budget");
}

ConjugacyResult build_conjugacy(
    const std::vector<Rational>& multipliers, const LyapunovWeights& weights,
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    const JetPolynomial& f_jet, double s, int nodes_per_axis, double epsilon, double eta,
    bool exact_polynomial_f) {
  LogRates lr = log_rates(multipliers);
  if (s <= lr.l1 / lr.ll)
    throw std::invalid_argument("build_conjugacy: s must exceed the weight ratio l1/ll");
  int d = static_cast<int>(std::floor(s));
  double alpha = s - d;

  if (epsilon <= 0) epsilon = std::min(0.01, (lr.l1 - s * lr.ll) / (2 * (s + 2)));

  JetConjugacy jc = solve_jet_conjugacy(multipliers, weights, f_jet, d, /*strict=*/true);
  // hbar: the polynomial with the jets of H
  const JetPolynomial& hbar = jc.h;

  const int n = weights.total_dim();
  GridFn r0(n, n, 1.0, nodes_per_axis);
  std::vector<double> lmul(n);
  for (int i = 0; i < n; ++i) lmul[i] = to_double(multipliers[i]);
  double f_dist = 0;
  for (size_t fi = 0; fi < r0.node_count(); ++fi) {
    auto x = r0.node_point(fi);
    auto fx = f(x);
    auto hfx = hbar.eval(fx);
    auto hx = hbar.eval(x);
    std::vector<double> v(n);
    for (int c = 0; c < n; ++c) {
      v[c] = hfx[c] - lmul[c] * hx[c];  // R0 = hbar . f - L . hbar
      f_dist = std::max(f_dist, std::fabs(fx[c] - lmul[c] * x[c]));
    }
    r0.set_node(fi, v);
  }

  if (f_dist > eta)
    throw std::invalid_argument("build_conjugacy: |f - L| = " + std::to_string(f_dist) +
                                " exceeds the closeness threshold " + std::to_string(eta));

  TailResult tail;
  if (exact_polynomial_f) {
    // expand R0 = hbar . f - L . hbar exactly; degree d^2 covers the
    // composition of the two degree-d polynomials without truncation
    int full = d * std::max(1, f_jet.degree);
    JetPolynomial hbar_full = JetPolynomial::zero(weights, weights, full);
    for (int j = 0; j < n; ++j)
      for (const auto& [a, c] : hbar.coeffs[j]) hbar_full.coeffs[j][a] = c;
    JetPolynomial f_full = JetPolynomial::zero(weights, weights, full);
    for (int j = 0; j < n; ++j)
      for (const auto& [a, c] : f_jet.coeffs[j]) f_full.coeffs[j][a] = c;
    JetPolynomial comp = jet_compose(hbar_full, f_full);
    JetPolynomial r0_poly = JetPolynomial::zero(weights, weights, full);
    for (int j = 0; j < n; ++j) {
      for (const auto& [a, c] : comp.coeffs[j]) r0_poly.coeffs[j][a] = c;
      for (const auto& [a, c] : hbar.coeffs[j]) r0_poly.coeffs[j][a] -= multipliers[j] * c;
      for (auto it = r0_poly.coeffs[j].begin(); it != r0_poly.coeffs[j].end();)
        it = (it->second == 0) ? r0_poly.coeffs[j].erase(it) : std::next(it);
      for (const auto& [a, c] : r0_poly.coeffs[j]) {
        (void)c;
        if (multi_degree(a) <= d)
          throw std::logic_error("build_conjugacy: exact R0 fails to vanish to order d");
      }
    }
    auto r0_eval = [r0_poly](const std::vector<double>& y) { return r0_poly.eval(y); };
    GridFn shape(n, n, 1.0, nodes_per_axis);
    shape.set_interp_order(3);
    tail = tail_series(multipliers, f, r0_eval, shape, d, alpha, epsilon);
  } else {
    tail = tail_fixed_point(multipliers, f, r0, d, alpha, epsilon);
  }

  ConjugacyResult out;
  out.hbar = hbar;
  out.tail = tail.tail;
  out.kappa = tail.kappa;
  out.epsilon = epsilon;
  out.tail_log = tail.log;
  out.f_dist_sup = f_dist;

  // residual and distance to the identity, sampled at nodes and midpoints
  auto hhat = [&](const std::vector<double>& x) -> std::vector<double> {
    auto v = out.hbar.eval(x);
    auto t = out.tail.eval(x);
    if (!t) throw std::runtime_error("build_conjugacy: tail evaluation failed");
    for (int c = 0; c < n; ++c) v[c] += (*t)[c];
    return v;
  };
  double resid = 0, dist_id = 0;
  double h = out.tail.h();
  auto probe = [&](const std::vector<double>& x) {
    bool inside = true;
    for (double xv : x)
      if (std::fabs(xv) > 1.0) inside = false;
    if (!inside) return;
    auto fx = f(x);
    auto lhs = hhat(fx);
    auto hx = hhat(x);
    for (int c = 0; c < n; ++c) {
      resid = std::max(resid, std::fabs(lhs[c] - lmul[c] * hx[c]));
      dist_id = std::max(dist_id, std::fabs(hx[c] - x[c]));
    }
  };
  for (size_t fi = 0; fi < out.tail.node_count(); ++fi) {
    auto x = out.tail.node_point(fi);
    probe(x);
    auto mid = x;
    for (int c = 0; c < n; ++c) mid[c] += h / 2;
    probe(mid);
  }
  out.residual_sup = resid;
  out.sup_dist_id = dist_id;
  return out;
}

std::string ConjugacyResult::to_json() const {
  nlohmann::json j;
  j["kappa"] = kappa;
  j["epsilon"] = epsilon;
  j["residual_sup"] = residual_sup;
  j["sup_dist_id"] = sup_dist_id;
  j["f_dist_sup"] = f_dist_sup;
  nlohmann::json jh;
  jh["degree"] = hbar.degree;
  jh["components"] = nlohmann::json::array();
  for (int c = 0; c < hbar.out_dim(); ++c) {
    nlohmann::json comp = nlohmann::json::array();
    for (const auto& [a, coef] : hbar.coeffs[c])
      comp.push_back({{"alpha", a}, {"coeff", to_string(coef)}});
    jh["components"].push_back(std::move(comp));
  }
  j["hbar"] = std::move(jh);
  j["tail"] = {{"radius", tail.radius()},
               {"nodes_per_axis", tail.nodes_per_axis()},
               {"dim", tail.dim_in()},
               {"values", tail.raw_values()}};
  nlohmann::json jl = nlohmann::json::array();
  for (const auto& st : tail_log)
    jl.push_back({{"step", st.step}, {"distance", st.distance}, {"ratio", st.ratio}});
  j["iterations"] = jl;
  return j.dump();
}

}  // namespace rootreg

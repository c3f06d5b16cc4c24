#include "rootreg/graphtransform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rootreg {

namespace {

double norm2(const std::vector<double>& v, int from, int to) {
  double s = 0;
  for (int i = from; i < to; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

double norm2(const std::vector<double>& v) { return norm2(v, 0, static_cast<int>(v.size())); }

// max of the factor Euclidean norms
double block_norm(const std::vector<double>& xy, int d1) {
  return std::max(norm2(xy, 0, d1), norm2(xy, d1, static_cast<int>(xy.size())));
}

std::vector<double> matvec(const Matrix<double>& m, const std::vector<double>& x) {
  std::vector<double> out(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

// largest/smallest singular value via the eigenvalues of A^T A
// (dimensions <= 3: Jacobi iteration is exact enough at 1e-14)
std::pair<double, double> singular_range(const Matrix<double>& a) {
  int n = a.cols();
  Matrix<double> s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0;
      for (int k = 0; k < a.rows(); ++k) v += a(k, i) * a(k, j);
      s(i, j) = v;
    }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(s(p, q)) < 1e-30) continue;
        double theta = 0.5 * std::atan2(2 * s(p, q), s(q, q) - s(p, p));
        double c = std::cos(theta), sn = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < n; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
      }
  }
  double lo = s(0, 0), hi = s(0, 0);
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, s(i, i));
    hi = std::max(hi, s(i, i));
  }
  return {std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

}  // namespace

std::vector<double> HyperbolicBlockMap::apply(const std::vector<double>& xy) const {
  std::vector<double> x(xy.begin(), xy.begin() + d1), y(xy.begin() + d1, xy.end());
  auto tx = matvec(a1, x);
  auto ty = matvec(a2, y);
  std::vector<double> out(d1 + d2);
  for (int i = 0; i < d1; ++i) out[i] = tx[i];
  for (int i = 0; i < d2; ++i) out[d1 + i] = ty[i];
  if (nonlinearity) {
    auto p = nonlinearity(xy);
    for (int i = 0; i < d1 + d2; ++i) out[i] += p[i];
  }
  return out;
}

std::vector<double> HyperbolicBlockMap::f1(const std::vector<double>& xy) const {
  auto v = apply(xy);
  return std::vector<double>(v.begin(), v.begin() + d1);
}

std::vector<double> HyperbolicBlockMap::f2(const std::vector<double>& xy) const {
  auto v = apply(xy);
  return std::vector<double>(v.begin() + d1, v.end());
}

void HyperbolicBlockMap::validate() const {
  if (!(0 < lambda && lambda < 1 - eps && 1 - eps < 1))
    throw std::invalid_argument("hyperbolic map: need 0 < lambda < 1-eps < 1");
  auto [s2lo, s2hi] = singular_range(a2);
  (void)s2lo;
  if (s2hi > lambda * (1 + 1e-9))
    throw std::invalid_argument("hyperbolic map: ||A2|| exceeds lambda");
  auto [s1lo, s1hi] = singular_range(a1);
  if (s1lo < (1 - eps) * (1 - 1e-9))
    throw std::invalid_argument("hyperbolic map: ||A1^{-1}||^{-1} below 1-eps");
  if (s1hi > mu * (1 + 1e-9)) throw std::invalid_argument("hyperbolic map: ||A1|| exceeds mu");
  std::vector<double> zero(d1 + d2, 0.0);
  if (nonlinearity && block_norm(nonlinearity(zero), d1) > 1e-14)
    throw std::invalid_argument("hyperbolic map: f(0) != 0");
}

bool HyperbolicBlockMap::contraction_hypotheses() const {
  return delta < std::min(1.0 / (1 - eps), 0.5 * (1 - eps - lambda));
}

GraphFunction GraphFunction::sample(
    int d1, int d2, double radius, int nodes_per_axis,
    const std::function<std::vector<double>(const std::vector<double>&)>& sigma,
    double lip_bound) {
  GraphFunction g;
  g.grid = GridFn(d1, d2, radius, nodes_per_axis);
  g.domain_radius = radius;
  g.lip_bound = lip_bound;
  for (size_t f = 0; f < g.grid.node_count(); ++f) {
    auto x = g.grid.node_point(f);
    if (norm2(x) > radius * (1 + 1e-12)) {
      g.grid.set_node_valid(f, false);
      continue;
    }
    g.grid.set_node(f, sigma(x));
  }
  return g;
}

bool GraphFunction::contains(const std::vector<double>& x) const {
  if (norm2(x) > domain_radius * (1 + 1e-12)) return false;
  return grid.eval(x).has_value();
}

namespace {

// damped inversion of g_sigma(w) = f1(w, sigma(w)) at target xhat;
// contraction factor delta/(1-eps) under the contraction hypotheses
struct InvertResult {
  bool ok = false;
  std::vector<double> w;
};

InvertResult invert_gsigma(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                           const Matrix<double>& a1inv, const std::vector<double>& xhat) {
  InvertResult res;
  std::vector<double> w = matvec(a1inv, xhat);
  for (int i = 0; i < map.d1; ++i)
    w[i] = std::max(-sigma.domain_radius, std::min(sigma.domain_radius, w[i]));
  for (int it = 0; it < 200; ++it) {
    // clamp into the sampled box; convergence is certified by the residual
    std::vector<double> wc = w;
    double nw = norm2(wc);
    if (nw > sigma.domain_radius) {
      for (auto& c : wc) c *= sigma.domain_radius / nw;
    }
    auto sv = sigma.grid.eval(wc);
    if (!sv) return res;
    std::vector<double> xy(map.d1 + map.d2);
    for (int i = 0; i < map.d1; ++i) xy[i] = wc[i];
    for (int i = 0; i < map.d2; ++i) xy[map.d1 + i] = (*sv)[i];
    auto gx = map.f1(xy);
    std::vector<double> r(map.d1);
    double rn = 0;
    for (int i = 0; i < map.d1; ++i) {
      r[i] = xhat[i] - gx[i];
      rn = std::max(rn, std::fabs(r[i]));
    }
    if (rn < 1e-12) {
      if (norm2(wc) > sigma.domain_radius * (1 + 1e-9)) return res;  // left W
      res.ok = true;
      res.w = wc;
      return res;
    }
    auto corr = matvec(a1inv, r);
    for (int i = 0; i < map.d1; ++i) w[i] = wc[i] + corr[i];
  }
  return res;
}

}  // namespace

GraphFunction graph_transform(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                              TransformStats* stats, int nodes_per_axis) {
  if (!map.contraction_hypotheses())
    throw std::invalid_argument(
        "graph_transform: delta must satisfy delta < min{1/(1-eps), (1-eps-lambda)/2}");
  if (sigma.lip_bound > 1 + 1e-12)
    throw std::invalid_argument("graph_transform: Lip(sigma) must be <= 1");
  Matrix<double> a1inv = map.a1.inverse();
  double outer = sigma.domain_radius * (map.mu + map.delta);
  int nodes = nodes_per_axis > 0 ? nodes_per_axis : sigma.grid.nodes_per_axis();

  GraphFunction out;
  out.grid = GridFn(map.d1, map.d2, outer, nodes);
  out.domain_radius = outer;
  TransformStats st;
  st.domain_outer = outer;

  std::vector<std::pair<std::vector<double>, std::vector<double>>> samples;  // (xhat, value)
  std::vector<std::vector<double>> preimages;                                // g^{-1}(xhat)
  for (size_t f = 0; f < out.grid.node_count(); ++f) {
    auto xhat = out.grid.node_point(f);
    auto inv = invert_gsigma(map, sigma, a1inv, xhat);
    if (!inv.ok) {
      out.grid.set_node_valid(f, false);
      continue;
    }
    auto sv = sigma.grid.eval(inv.w);
    if (!sv || norm2(inv.w) > sigma.domain_radius * (1 + 1e-9)) {
      out.grid.set_node_valid(f, false);
      continue;
    }
    std::vector<double> xy(map.d1 + map.d2);
    for (int i = 0; i < map.d1; ++i) xy[i] = inv.w[i];
    for (int i = 0; i < map.d2; ++i) xy[map.d1 + i] = (*sv)[i];
    auto val = map.f2(xy);
    out.grid.set_node(f, val);
    samples.push_back({xhat, val});
    preimages.push_back(inv.w);
  }

  // measured Lipschitz constant: all grid-neighbor pairs plus far pairs
  double lip = 0;
  for (size_t f = 0; f < out.grid.node_count(); ++f) {
    if (!out.grid.node_valid(f)) continue;
    auto idx = out.grid.unflat(f);
    for (int axis = 0; axis < map.d1; ++axis) {
      if (idx[axis] + 1 >= out.grid.nodes_per_axis()) continue;
      auto jdx = idx;
      ++jdx[axis];
      size_t fj = out.grid.flat(jdx);
      if (!out.grid.node_valid(fj)) continue;
      double num = 0;
      auto a = out.grid.node_value(f), b = out.grid.node_value(fj);
      for (int c = 0; c < map.d2; ++c) num += (a[c] - b[c]) * (a[c] - b[c]);
      lip = std::max(lip, std::sqrt(num) / out.grid.h());
    }
  }
  double lip_ginv = 0;
  Rng far_rng(0xfa9);
  for (int k = 0; k < 1000 && samples.size() >= 2; ++k) {
    size_t i = far_rng.below(samples.size()), j = far_rng.below(samples.size());
    if (i == j) continue;
    double dx = 0, dv = 0, dw = 0;
    for (int c = 0; c < map.d1; ++c) {
      dx += (samples[i].first[c] - samples[j].first[c]) * (samples[i].first[c] - samples[j].first[c]);
      dw += (preimages[i][c] - preimages[j][c]) * (preimages[i][c] - preimages[j][c]);
    }
    for (int c = 0; c < map.d2; ++c)
      dv += (samples[i].second[c] - samples[j].second[c]) * (samples[i].second[c] - samples[j].second[c]);
    if (dx > 1e-20) {
      lip = std::max(lip, std::sqrt(dv / dx));
      lip_ginv = std::max(lip_ginv, std::sqrt(dw / dx));
    }
  }
  st.measured_lip = lip;
  st.measured_lip_ginv = lip_ginv;
  out.lip_bound = std::min(1.0, (map.lambda + map.delta) / (1 - map.eps - map.delta));

  // verified inner ball: largest grid radius whose nodes are all valid
  double inner = outer;
  for (size_t f = 0; f < out.grid.node_count(); ++f) {
    if (out.grid.node_valid(f)) continue;
    auto x = out.grid.node_point(f);
    inner = std::min(inner, norm2(x) - out.grid.h());
  }
  st.domain_inner = std::max(0.0, inner);
  if (stats) *stats = st;
  return out;
}

DomainBoundsReport domain_bounds_check(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                                       double kappa1, double kappa2, int samples,
                                       std::uint64_t seed) {
  DomainBoundsReport rep;
  rep.samples = samples;
  Rng rng(seed);
  Matrix<double> a1inv = map.a1.inverse();
  double inner_r = kappa1 * (1 - map.eps - map.delta);
  double outer_r = kappa2 * (map.mu + map.delta);
  for (int k = 0; k < samples; ++k) {
    // outer: image of a random point of W stays in E1(outer_r)
    std::vector<double> w(map.d1);
    double n = 0;
    for (int i = 0; i < map.d1; ++i) { w[i] = rng.uniform(-1, 1); n += w[i] * w[i]; }
    n = std::sqrt(n);
    double r = sigma.domain_radius * std::pow(rng.unit(), 1.0 / map.d1);
    for (int i = 0; i < map.d1; ++i) w[i] *= (n > 0 ? r / n : 0);
    auto sv = sigma.grid.eval(w);
    if (sv) {
      std::vector<double> xy(map.d1 + map.d2);
      for (int i = 0; i < map.d1; ++i) xy[i] = w[i];
      for (int i = 0; i < map.d2; ++i) xy[map.d1 + i] = (*sv)[i];
      auto img = map.f1(xy);
      if (norm2(img) > outer_r * (1 + 1e-9)) rep.outer_violations.push_back(w);
    }
    // inner: a random point of E1(inner_r) is reached from W
    std::vector<double> xhat(map.d1);
    n = 0;
    for (int i = 0; i < map.d1; ++i) { xhat[i] = rng.uniform(-1, 1); n += xhat[i] * xhat[i]; }
    n = std::sqrt(n);
    double rr = inner_r * std::pow(rng.unit(), 1.0 / map.d1);
    for (int i = 0; i < map.d1; ++i) xhat[i] *= (n > 0 ? rr / n : 0);
    auto inv = invert_gsigma(map, sigma, a1inv, xhat);
    if (!inv.ok) rep.inner_violations.push_back(xhat);
  }
  return rep;
}

PointwiseStats pointwise_contract_check(const HyperbolicBlockMap& map, const GraphFunction& sigma,
                                        const GraphFunction& transformed, int samples,
                                        std::uint64_t seed) {
  PointwiseStats st;
  st.samples = samples;
  Rng rng(seed);
  double rate = map.lambda + 2 * map.delta;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> x(map.d1), y(map.d2);
    double n = 0;
    for (int i = 0; i < map.d1; ++i) { x[i] = rng.uniform(-1, 1); n += x[i] * x[i]; }
    n = std::sqrt(n);
    double r = sigma.domain_radius * std::pow(rng.unit(), 1.0 / map.d1);
    for (int i = 0; i < map.d1; ++i) x[i] *= (n > 0 ? r / n : 0);
    for (int i = 0; i < map.d2; ++i) y[i] = rng.uniform(-1, 1) * sigma.domain_radius;
    auto sx = sigma.grid.eval(x);
    if (!sx) { ++st.skipped; continue; }
    std::vector<double> xy(map.d1 + map.d2);
    for (int i = 0; i < map.d1; ++i) xy[i] = x[i];
    for (int i = 0; i < map.d2; ++i) xy[map.d1 + i] = y[i];
    auto img1 = map.f1(xy);
    auto gv = transformed.grid.eval(img1);
    if (!gv || !transformed.contains(img1)) { ++st.skipped; continue; }
    auto img2 = map.f2(xy);
    double lhs = 0, dy = 0;
    for (int i = 0; i < map.d2; ++i) {
      lhs += (img2[i] - (*gv)[i]) * (img2[i] - (*gv)[i]);
      dy += (y[i] - (*sx)[i]) * (y[i] - (*sx)[i]);
    }
    lhs = std::sqrt(lhs);
    dy = std::sqrt(dy);
    if (dy < 1e-12) continue;
    st.max_ratio = std::max(st.max_ratio, lhs / (rate * dy));
  }
  return st;
}

IterationLog iterate_graph_transform(const std::vector<HyperbolicBlockMap>& maps,
                                     const GraphFunction& sigma1, const GraphFunction& sigma2,
                                     int n, double kappa) {
  if (maps.empty() || n < 1 || n > static_cast<int>(maps.size()))
    throw std::invalid_argument("iterate_graph_transform: bad step count");
  const auto& m0 = maps.front();
  for (const auto& m : maps) {
    if (!m.contraction_hypotheses())
      throw std::invalid_argument("iterate_graph_transform: delta hypothesis fails");
    if (m.d1 != m0.d1 || m.d2 != m0.d2)
      throw std::invalid_argument("iterate_graph_transform: inconsistent splittings");
  }
  // nesting window: W1 in E1(kappa (mu+2d)^{-n} (1-eps-d)^n), E1(kappa) in W2
  double shrink = std::pow(m0.mu + 2 * m0.delta, -n) * std::pow(1 - m0.eps - m0.delta, n);
  if (sigma1.domain_radius > kappa * shrink * (1 + 1e-9))
    throw std::invalid_argument("iterate_graph_transform: W1 exceeds the nesting window");
  if (sigma2.domain_radius < kappa * (1 - 1e-9))
    throw std::invalid_argument("iterate_graph_transform: E1(kappa) not inside W2");

  IterationLog log;
  GraphFunction g1 = sigma1, g2 = sigma2;

  auto distance_on_g1 = [&](const GraphFunction& a, const GraphFunction& b, double* dom) {
    double dist = 0, rad = 0;
    int count = 0;
    for (size_t f = 0; f < a.grid.node_count(); ++f) {
      if (!a.grid.node_valid(f)) continue;
      auto x = a.grid.node_point(f);
      if (norm2(x) > a.domain_radius) continue;
      auto vb = b.grid.eval(x);
      if (!vb) continue;  // outside the verified part of W2-hat
      auto va = a.grid.node_value(f);
      double d2s = 0;
      for (size_t c = 0; c < va.size(); ++c) d2s += (va[c] - (*vb)[c]) * (va[c] - (*vb)[c]);
      dist = std::max(dist, std::sqrt(d2s));
      rad = std::max(rad, norm2(x));
      ++count;
    }
    *dom = rad;
    return count > 0 ? dist : -1.0;
  };

  double dom0 = 0;
  double d0 = distance_on_g1(g1, g2, &dom0);
  log.steps.push_back({0, dom0, d0, 0.0});
  double prev = d0;
  for (int k = 1; k <= n; ++k) {
    g1 = graph_transform(maps[k - 1], g1);
    g2 = graph_transform(maps[k - 1], g2);
    double dom = 0;
    double d = distance_on_g1(g1, g2, &dom);
    if (d < 0) {
      log.collapsed_at = k;
      break;
    }
    log.steps.push_back({k, dom, d, prev > 0 ? d / prev : 0.0});
    prev = d > 0 ? d : prev;
  }
  return log;
}

HyperbolicBlockMap random_hyperbolic_map(int d1, int d2, double lambda, double eps, double mu,
                                         double delta, Rng& rng) {
  auto rotation = [&](int d) {
    Matrix<double> r = Matrix<double>::identity(d);
    if (d == 2) {
      double th = rng.uniform(0, 6.283185307179586);
      r(0, 0) = std::cos(th); r(0, 1) = -std::sin(th);
      r(1, 0) = std::sin(th); r(1, 1) = std::cos(th);
    } else if (d == 3) {
      // product of two planar rotations
      Matrix<double> a = Matrix<double>::identity(3), b = Matrix<double>::identity(3);
      double t1 = rng.uniform(0, 6.283185307179586), t2 = rng.uniform(0, 6.283185307179586);
      a(0, 0) = std::cos(t1); a(0, 1) = -std::sin(t1); a(1, 0) = std::sin(t1); a(1, 1) = std::cos(t1);
      b(1, 1) = std::cos(t2); b(1, 2) = -std::sin(t2); b(2, 1) = std::sin(t2); b(2, 2) = std::cos(t2);
      r = a * b;
    }
    return r;
  };
  auto banded = [&](int d, double lo, double hi) {
    Matrix<double> m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = rng.uniform(lo, hi);
    return rotation(d) * m * rotation(d);
  };

  HyperbolicBlockMap map;
  map.d1 = d1;
  map.d2 = d2;
  map.lambda = lambda;
  map.eps = eps;
  map.mu = mu;
  map.delta = delta;
  map.a1 = banded(d1, (1 - eps) * 1.02, mu * 0.98);
  map.a2 = banded(d2, 0.2 * lambda, lambda * 0.98);

  // smooth nonlinearity amp_c sin(w_c . p): certified Lipschitz bound
  // max over factors of sqrt(sum_c (amp_c (|w_x|_2 + |w_y|_2))^2)
  int k = d1 + d2;
  std::vector<std::vector<double>> w(k, std::vector<double>(k));
  std::vector<double> amp(k);
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < k; ++i) w[c][i] = rng.uniform(-1, 1);
    amp[c] = rng.uniform(0.3, 1.0);
  }
  double worst = 0;
  for (int from = 0; from < 2; ++from) {
    double s = 0;
    for (int c = from == 0 ? 0 : d1; c < (from == 0 ? d1 : k); ++c) {
      double wx = norm2(w[c], 0, d1), wy = norm2(w[c], d1, k);
      s += amp[c] * amp[c] * (wx + wy) * (wx + wy);
    }
    worst = std::max(worst, std::sqrt(s));
  }
  double scale = worst > 0 ? 0.95 * delta / worst : 0;
  for (int c = 0; c < k; ++c) amp[c] *= scale;
  map.nonlinearity = [w, amp, k](const std::vector<double>& p) {
    std::vector<double> out(k, 0.0);
    for (int c = 0; c < k; ++c) {
      double arg = 0;
      for (int i = 0; i < k; ++i) arg += w[c][i] * p[i];
      out[c] = amp[c] * std::sin(arg);
    }
    return out;
  };
  map.validate();
  return map;
}

std::string IterationLog::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : steps)
    j.push_back({{"step", s.step},
                 {"domain_radius", s.domain_radius},
                 {"distance", s.distance},
                 {"ratio", s.ratio}});
  nlohmann::json out;
  out["steps"] = std::move(j);
  out["collapsed_at"] = collapsed_at;
  return out.dump(1);
}

}  // namespace rootreg

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rootreg {

// Uniform tensor grid over [-radius, radius]^dim_in carrying vector values;
// odd node count per axis so the origin is a node.  Evaluation is
// multilinear; in one dimension a 4-point cubic stencil is used instead
// (the tail iteration needs the extra order).
class GridFn {
 public:
  GridFn() = default;
  GridFn(int dim_in, int dim_out, double radius, int nodes_per_axis)
      : di_(dim_in), do_(dim_out), radius_(radius), n_(nodes_per_axis) {
    if (dim_in < 1 || dim_in > 3) throw std::invalid_argument("GridFn: dim_in must be 1..3");
    if (n_ < 5 || n_ % 2 == 0) throw std::invalid_argument("GridFn: odd node count >= 5 required");
    size_t total = 1;
    for (int i = 0; i < di_; ++i) total *= static_cast<size_t>(n_);
    values_.assign(total * do_, 0.0);
    valid_.assign(total, 1);
    order_ = (dim_in == 1) ? 3 : 1;
  }

  int dim_in() const { return di_; }
  // 1 = multilinear, 3 = tensor 4-point cubic (needs a mask-free band)
  void set_interp_order(int order) {
    if (order != 1 && order != 3) throw std::invalid_argument("GridFn: order 1 or 3");
    order_ = order;
  }
  int interp_order() const { return order_; }
  int dim_out() const { return do_; }
  int nodes_per_axis() const { return n_; }
  double radius() const { return radius_; }
  double h() const { return 2.0 * radius_ / (n_ - 1); }
  size_t node_count() const { return valid_.size(); }

  double coord(int idx) const { return -radius_ + idx * h(); }

  size_t flat(const std::vector<int>& idx) const {
    size_t f = 0;
    for (int i = 0; i < di_; ++i) f = f * n_ + idx[i];
    return f;
  }

  std::vector<int> unflat(size_t f) const {
    std::vector<int> idx(di_);
    for (int i = di_ - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(f % n_);
      f /= n_;
    }
    return idx;
  }

  std::vector<double> node_point(size_t f) const {
    auto idx = unflat(f);
    std::vector<double> x(di_);
    for (int i = 0; i < di_; ++i) x[i] = coord(idx[i]);
    return x;
  }

  bool node_valid(size_t f) const { return valid_[f] != 0; }
  void set_node_valid(size_t f, bool v) { valid_[f] = v ? 1 : 0; }

  void set_node(size_t f, const std::vector<double>& v) {
    for (int c = 0; c < do_; ++c) values_[f * do_ + c] = v[c];
  }
  std::vector<double> node_value(size_t f) const {
    std::vector<double> v(do_);
    for (int c = 0; c < do_; ++c) v[c] = values_[f * do_ + c];
    return v;
  }

  // nullopt outside the box or next to an invalid node
  std::optional<std::vector<double>> eval(const std::vector<double>& x) const {
    for (int i = 0; i < di_; ++i)
      if (std::fabs(x[i]) > radius_ * (1 + 1e-12)) return std::nullopt;
    if (order_ == 3) return eval_cubic(x);
    return eval_multilinear(x);
  }

  const std::vector<double>& raw_values() const { return values_; }

 private:
  std::optional<std::vector<double>> eval_multilinear(const std::vector<double>& x) const {
    std::vector<int> base(di_);
    std::vector<double> t(di_);
    for (int i = 0; i < di_; ++i) {
      double u = (x[i] + radius_) / h();
      int b = static_cast<int>(std::floor(u));
      b = std::max(0, std::min(b, n_ - 2));
      base[i] = b;
      t[i] = u - b;
    }
    std::vector<double> out(do_, 0.0);
    int corners = 1 << di_;
    for (int c = 0; c < corners; ++c) {
      double w = 1;
      std::vector<int> idx(di_);
      for (int i = 0; i < di_; ++i) {
        int bit = (c >> i) & 1;
        idx[i] = base[i] + bit;
        w *= bit ? t[i] : 1 - t[i];
      }
      size_t f = flat(idx);
      if (!valid_[f]) return std::nullopt;
      for (int k = 0; k < do_; ++k) out[k] += w * values_[f * do_ + k];
    }
    return out;
  }

  // tensor 4-point Lagrange stencil, one-sided at the box ends
  std::optional<std::vector<double>> eval_cubic(const std::vector<double>& x) const {
    std::vector<int> base(di_);
    double w[3][4];
    for (int i = 0; i < di_; ++i) {
      double u = (x[i] + radius_) / h();
      int b = static_cast<int>(std::floor(u));
      b = std::max(1, std::min(b, n_ - 3));
      base[i] = b - 1;
      double s = u - b;
      w[i][0] = -s * (s - 1) * (s - 2) / 6.0;
      w[i][1] = (s + 1) * (s - 1) * (s - 2) / 2.0;
      w[i][2] = -(s + 1) * s * (s - 2) / 2.0;
      w[i][3] = (s + 1) * s * (s - 1) / 6.0;
    }
    std::vector<double> out(do_, 0.0);
    int corners = 1;
    for (int i = 0; i < di_; ++i) corners *= 4;
    std::vector<int> idx(di_);
    for (int c = 0; c < corners; ++c) {
      int t = c;
      double wt = 1;
      for (int i = 0; i < di_; ++i) {
        int k = t & 3;
        t >>= 2;
        idx[i] = base[i] + k;
        wt *= w[i][k];
      }
      size_t f = flat(idx);
      if (!valid_[f]) return std::nullopt;
      for (int cc = 0; cc < do_; ++cc) out[cc] += wt * values_[f * do_ + cc];
    }
    return out;
  }

  int di_ = 0, do_ = 0;
  double radius_ = 1.0;
  int n_ = 0;
  int order_ = 1;
  std::vector<double> values_;
  std::vector<std::uint8_t> valid_;
};

inline double sup_diff(const GridFn& a, const GridFn& b) {
  double m = 0;
  for (size_t f = 0; f < a.node_count(); ++f) {
    if (!a.node_valid(f) || !b.node_valid(f)) continue;
    auto va = a.node_value(f), vb = b.node_value(f);
    for (size_t c = 0; c < va.size(); ++c) m = std::max(m, std::fabs(va[c] - vb[c]));
  }
  return m;
}

}  // namespace rootreg

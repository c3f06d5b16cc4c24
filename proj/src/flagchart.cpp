#include "rootreg/flagchart.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rootreg {

template <class T>
FlagChartContext<T>::FlagChartContext(int n_, std::vector<int> blocks_)
    : n(n_), blocks(std::move(blocks_)) {
  int sum = 0;
  for (int b : blocks) {
    if (b <= 0) throw std::invalid_argument("block sizes must be positive");
    offsets.push_back(sum);
    sum += b;
  }
  if (sum != n) throw std::invalid_argument("block sizes must sum to n");
}

namespace {

template <class T>
bool block_singular(const Matrix<T>& p, double threshold) {
  if constexpr (std::is_floating_point_v<T>) {
    double scale = std::max(1.0, std::pow(p.max_abs(), p.rows()));
    return std::fabs(static_cast<double>(p.det())) <= threshold * scale;
  } else {
    (void)threshold;
    return p.det() == T(0);
  }
}

}  // namespace

template <class T>
bool FlagChartContext<T>::in_q(const Matrix<T>& m) const {
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    for (size_t bj = 0; bj < bi; ++bj)
      for (int i = 0; i < blocks[bi]; ++i)
        for (int j = 0; j < blocks[bj]; ++j)
          if (m(offsets[bi] + i, offsets[bj] + j) != T(0)) return false;
    if (block_singular(m.block(offsets[bi], offsets[bi], blocks[bi], blocks[bi]),
                       minor_threshold))
      return false;
  }
  return true;
}

template <class T>
bool FlagChartContext<T>::in_v(const Matrix<T>& m) const {
  for (size_t bi = 0; bi < blocks.size(); ++bi)
    for (size_t bj = bi; bj < blocks.size(); ++bj)
      for (int i = 0; i < blocks[bi]; ++i)
        for (int j = 0; j < blocks[bj]; ++j) {
          T want = (bi == bj && i == j) ? T(1) : T(0);
          if (m(offsets[bi] + i, offsets[bj] + j) != want) return false;
        }
  return true;
}

template <class T>
QvFactorization<T> qv_factor(const FlagChartContext<T>& ctx, const Matrix<T>& m) {
  QvFactorization<T> out;
  const int k = static_cast<int>(ctx.blocks.size());
  Matrix<T> w = m;
  Matrix<T> v = Matrix<T>::identity(ctx.n);
  for (int bi = k - 1; bi >= 1; --bi) {
    int off = ctx.offsets[bi], sz = ctx.blocks[bi];
    Matrix<T> p = w.block(off, off, sz, sz);
    if (block_singular(p, ctx.minor_threshold)) {
      out.error = "not in Q*V cell: singular trailing block minor at block " + std::to_string(bi);
      return out;
    }
    Matrix<T> l = p.inverse() * w.block(off, 0, sz, off);
    v.set_block(off, 0, l);
    // leading complement A - B P^{-1} C
    Matrix<T> b = w.block(0, off, off, sz);
    Matrix<T> upd = b * l;
    for (int i = 0; i < off; ++i)
      for (int j = 0; j < off; ++j) w(i, j) -= upd(i, j);
  }
  if (block_singular(w.block(0, 0, ctx.blocks[0], ctx.blocks[0]), ctx.minor_threshold)) {
    out.error = "not in Q*V cell: singular leading block after elimination";
    return out;
  }
  // q = eliminated matrix with the below-diagonal blocks cleared
  Matrix<T> q = w;
  for (int bi = 1; bi < k; ++bi)
    for (int i = 0; i < ctx.blocks[bi]; ++i)
      for (int j = 0; j < ctx.offsets[bi]; ++j) q(ctx.offsets[bi] + i, j) = T(0);

  if constexpr (std::is_floating_point_v<T>) {
    // one Newton pass on q v = M: with S = q^{-1} (M - q v) v^{-1}, the
    // upper part of S corrects q (as q S_up) and the strictly-lower part
    // corrects v (as S_low v); this recovers the digits the Schur updates
    // lose on ill-conditioned draws
    Matrix<T> resid = m - q * v;
    Matrix<T> s = q.inverse() * resid * v.inverse();
    Matrix<T> s_up(ctx.n, ctx.n), s_low(ctx.n, ctx.n);
    for (size_t bi = 0; bi < ctx.blocks.size(); ++bi)
      for (size_t bj = 0; bj < ctx.blocks.size(); ++bj)
        for (int i = 0; i < ctx.blocks[bi]; ++i)
          for (int j = 0; j < ctx.blocks[bj]; ++j) {
            int r = ctx.offsets[bi] + i, c = ctx.offsets[bj] + j;
            (bi <= bj ? s_up : s_low)(r, c) = s(r, c);
          }
    q = q * (Matrix<T>::identity(ctx.n) + s_up);
    Matrix<T> vn = (Matrix<T>::identity(ctx.n) + s_low) * v;
    // keep v exactly unipotent
    for (size_t bi = 0; bi < ctx.blocks.size(); ++bi)
      for (int i = 0; i < ctx.blocks[bi]; ++i)
        for (int j = ctx.offsets[bi]; j < ctx.n; ++j)
          vn(ctx.offsets[bi] + i, j) = (ctx.offsets[bi] + i == j) ? T(1) : T(0);
    v = vn;
  }

  out.defined = true;
  out.q = std::move(q);
  out.v = std::move(v);
  return out;
}

template <class T>
QvFactorization<T> vq_factor(const FlagChartContext<T>& ctx, const Matrix<T>& m) {
  QvFactorization<T> out;
  const int k = static_cast<int>(ctx.blocks.size());
  Matrix<T> w = m;
  Matrix<T> v = Matrix<T>::identity(ctx.n);
  for (int bi = 0; bi + 1 < k; ++bi) {
    int off = ctx.offsets[bi], sz = ctx.blocks[bi];
    int rest = ctx.n - off - sz;
    Matrix<T> p = w.block(off, off, sz, sz);
    if (block_singular(p, ctx.minor_threshold)) {
      out.error = "not in V*Q cell: singular leading block minor at block " + std::to_string(bi);
      return out;
    }
    Matrix<T> l = w.block(off + sz, off, rest, sz) * p.inverse();
    v.set_block(off + sz, off, l);
    Matrix<T> upd = l * w.block(off, off + sz, sz, rest);
    for (int i = 0; i < rest; ++i)
      for (int j = 0; j < rest; ++j) w(off + sz + i, off + sz + j) -= upd(i, j);
    for (int i = 0; i < rest; ++i)
      for (int j = 0; j < sz; ++j) w(off + sz + i, off + j) = T(0);
  }
  if (block_singular(w.block(ctx.offsets[k - 1], ctx.offsets[k - 1], ctx.blocks[k - 1],
                             ctx.blocks[k - 1]),
                     ctx.minor_threshold)) {
    out.error = "not in V*Q cell: singular trailing block after elimination";
    return out;
  }
  out.defined = true;
  out.q = std::move(w);
  out.v = std::move(v);
  return out;
}

template <class T>
TauResult<T> tau(const FlagChartContext<T>& ctx, const Matrix<T>& q, const Matrix<T>& v) {
  TauResult<T> out;
  Matrix<T> conj = q * v * q.inverse();
  QvFactorization<T> f = qv_factor(ctx, conj);
  if (!f.defined) return out;
  out.defined = true;
  out.tau_v = std::move(f.v);
  out.qbar = f.q.inverse();  // tau_2: tau_v * q = qbar * q * v
  return out;
}

template <class T>
Matrix<T> random_q(const FlagChartContext<T>& ctx, Rng& rng) {
  Matrix<T> q(ctx.n, ctx.n);
  for (int i = 0; i < ctx.n; ++i) {
    if constexpr (std::is_floating_point_v<T>) {
      q(i, i) = static_cast<T>(rng.unit_band());
      for (int j = i + 1; j < ctx.n; ++j) q(i, j) = static_cast<T>(rng.uniform(-1, 1));
    } else {
      Rational mag = Rational(8 + static_cast<int>(rng.below(25)), 16);
      q(i, i) = (rng.bits() & 1) ? mag : -mag;
      for (int j = i + 1; j < ctx.n; ++j)
        q(i, j) = Rational(static_cast<int>(rng.below(33)) - 16, 16);
    }
  }
  // blocks below the diagonal stay zero: an upper-triangular matrix with
  // invertible diagonal lies in every block Q
  return q;
}

template <class T>
Matrix<T> random_v(const FlagChartContext<T>& ctx, Rng& rng) {
  Matrix<T> v = Matrix<T>::identity(ctx.n);
  for (size_t bi = 1; bi < ctx.blocks.size(); ++bi)
    for (int i = 0; i < ctx.blocks[bi]; ++i)
      for (int j = 0; j < ctx.offsets[bi]; ++j) {
        if constexpr (std::is_floating_point_v<T>) v(ctx.offsets[bi] + i, j) = static_cast<T>(rng.uniform(-1, 1));
        else v(ctx.offsets[bi] + i, j) = Rational(static_cast<int>(rng.below(33)) - 16, 16);
      }
  return v;
}

namespace {

template <class T>
double rel_residual(const Matrix<T>& got, const Matrix<T>& want) {
  if constexpr (!std::is_floating_point_v<T>) {
    if (got == want) return 0.0;
  }
  return max_abs_diff(got, want) / (1.0 + want.max_abs());
}

}  // namespace

template <class T>
IdentityReport check_tau_identities(const FlagChartContext<T>& ctx, int samples,
                                    std::uint64_t seed, double tolerance) {
  if (samples < 1) throw std::invalid_argument("check_tau_identities: samples >= 1");
  Rng rng(seed);
  IdentityReport rep;
  rep.samples = samples;
  auto record = [&](int id, std::uint64_t k, double res) {
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tolerance) rep.violations.push_back({id, k, res});
  };
  for (int k = 0; k < samples; ++k) {
    Matrix<T> q = random_q(ctx, rng);
    Matrix<T> qp = random_q(ctx, rng);
    Matrix<T> v = random_v(ctx, rng);
    Matrix<T> u = random_v(ctx, rng);

    TauResult<T> t = tau(ctx, q, v);
    if (!t.defined) { ++rep.skipped; continue; }
    Matrix<T> qbar = t.qbar * q;  // tau_q(v) q = qbar v
    Matrix<T> v_inv = v.inverse();
    Matrix<T> tv_inv = t.tau_v.inverse();

    if (TauResult<T> a = tau(ctx, qbar, v_inv); a.defined)
      record(1, k, rel_residual(a.tau_v, tv_inv));
    else ++rep.skipped;

    if (TauResult<T> b = tau(ctx, qbar.inverse(), tv_inv); b.defined)
      record(2, k, rel_residual(b.tau_v, v_inv));
    else ++rep.skipped;

    TauResult<T> c1 = tau(ctx, qp, t.tau_v);
    TauResult<T> c2 = tau(ctx, qp * q, v);
    if (c1.defined && c2.defined) record(3, k, rel_residual(c1.tau_v, c2.tau_v));
    else ++rep.skipped;

    TauResult<T> d1 = tau(ctx, qbar, u);
    TauResult<T> d2 = tau(ctx, q, u * v);
    if (d1.defined && d2.defined) record(4, k, rel_residual(d1.tau_v * t.tau_v, d2.tau_v));
    else ++rep.skipped;
  }
  return rep;
}

std::string IdentityReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["skipped"] = skipped;
  j["max_residual"] = max_residual;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back(
        {{"identity", v.identity}, {"sample", v.sample}, {"residual", v.residual}});
  return j.dump(1);
}

template struct FlagChartContext<double>;
template struct FlagChartContext<long double>;
template struct FlagChartContext<Rational>;
template QvFactorization<long double> qv_factor(const FlagChartContext<long double>&,
                                                const Matrix<long double>&);
template QvFactorization<long double> vq_factor(const FlagChartContext<long double>&,
                                                const Matrix<long double>&);
template TauResult<long double> tau(const FlagChartContext<long double>&,
                                    const Matrix<long double>&, const Matrix<long double>&);
template Matrix<long double> random_q(const FlagChartContext<long double>&, Rng&);
template Matrix<long double> random_v(const FlagChartContext<long double>&, Rng&);
template IdentityReport check_tau_identities(const FlagChartContext<long double>&, int,
                                             std::uint64_t, double);
template QvFactorization<double> qv_factor(const FlagChartContext<double>&, const Matrix<double>&);
template QvFactorization<Rational> qv_factor(const FlagChartContext<Rational>&,
                                             const Matrix<Rational>&);
template QvFactorization<double> vq_factor(const FlagChartContext<double>&, const Matrix<double>&);
template QvFactorization<Rational> vq_factor(const FlagChartContext<Rational>&,
                                             const Matrix<Rational>&);
template TauResult<double> tau(const FlagChartContext<double>&, const Matrix<double>&,
                               const Matrix<double>&);
template TauResult<Rational> tau(const FlagChartContext<Rational>&, const Matrix<Rational>&,
                                 const Matrix<Rational>&);
template Matrix<double> random_q(const FlagChartContext<double>&, Rng&);
template Matrix<Rational> random_q(const FlagChartContext<Rational>&, Rng&);
template Matrix<double> random_v(const FlagChartContext<double>&, Rng&);
template Matrix<Rational> random_v(const FlagChartContext<Rational>&, Rng&);
template IdentityReport check_tau_identities(const FlagChartContext<double>&, int, std::uint64_t,
                                             double);
template IdentityReport check_tau_identities(const FlagChartContext<Rational>&, int,
                                             std::uint64_t, double);

}  // namespace rootreg

#include "rootreg/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rootreg {

void IneqSystem::add(std::vector<Rational> coef, Rational b) {
  if (coef.size() != static_cast<size_t>(nvars))
    throw std::invalid_argument("IneqSystem::add: arity mismatch");
  rows.push_back(std::move(coef));
  rhs.push_back(std::move(b));
}

namespace {

// Scale (coef, rhs) to primitive integer form for deduplication.
void normalize_row(std::vector<Rational>& coef, Rational& b) {
  Integer l = 1;
  for (const auto& c : coef) l = lcm(l, denominator(c));
  l = lcm(l, denominator(b));
  Integer g = 0;
  for (auto& c : coef) {
    c *= l;
    g = gcd(g, numerator(c));
  }
  b *= l;
  g = gcd(g, numerator(b));
  if (g > 1) {
    for (auto& c : coef) c /= g;
    b /= g;
  }
}

}  // namespace

LpWitness feasible_fourier_motzkin(const IneqSystem& sys) {
  int n = sys.nvars;
  // layers[k] holds the system before eliminating variable k (k = n-1 .. 0)
  std::vector<std::vector<std::pair<std::vector<Rational>, Rational>>> layers(n + 1);
  auto& top = layers[n];
  for (size_t i = 0; i < sys.size(); ++i) top.push_back({sys.rows[i], sys.rhs[i]});

  for (int k = n - 1; k >= 0; --k) {
    std::set<std::pair<std::vector<Rational>, Rational>> next;
    std::vector<size_t> lower, upper, absent;
    const auto& cur = layers[k + 1];
    for (size_t i = 0; i < cur.size(); ++i) {
      const Rational& c = cur[i].first[k];
      if (c > 0) lower.push_back(i);
      else if (c < 0) upper.push_back(i);
      else absent.push_back(i);
    }
    for (size_t i : absent) {
      auto row = cur[i];
      normalize_row(row.first, row.second);
      next.insert(row);
    }
    for (size_t i : lower)
      for (size_t j : upper) {
        const Rational ci = cur[i].first[k], cj = cur[j].first[k];
        std::vector<Rational> coef(n, 0);
        for (int v = 0; v < n; ++v) coef[v] = -cj * cur[i].first[v] + ci * cur[j].first[v];
        Rational b = -cj * cur[i].second + ci * cur[j].second;
        normalize_row(coef, b);
        next.insert({std::move(coef), std::move(b)});
      }
    layers[k].assign(next.begin(), next.end());
  }

  // feasibility: every fully-eliminated row must read 0 >= b with b <= 0
  for (const auto& [coef, b] : layers[0]) {
    bool zero = std::all_of(coef.begin(), coef.end(), [](const Rational& c) { return c == 0; });
    if (zero && b > 0) return {false, {}};
    if (!zero) throw std::logic_error("fourier_motzkin: unexpected live coefficient");
  }

  // back-substitute a witness
  LpWitness w;
  w.feasible = true;
  w.point.assign(n, Rational(0));
  for (int k = 0; k < n; ++k) {
    bool has_lo = false, has_hi = false;
    Rational lo = 0, hi = 0;
    for (const auto& [coef, b] : layers[k + 1]) {
      const Rational& c = coef[k];
      if (c == 0) continue;
      Rational rest = b;
      for (int v = 0; v < k; ++v) rest -= coef[v] * w.point[v];
      // contributions of not-yet-assigned variables (> k) are zero by
      // construction of the elimination order
      Rational bound = rest / c;
      if (c > 0) {
        if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
      } else {
        if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
      }
    }
    if (has_lo && has_hi) {
      if (lo > hi) throw std::logic_error("fourier_motzkin: witness interval empty");
      w.point[k] = (lo + hi) / 2;
    } else if (has_lo) {
      w.point[k] = lo;
    } else if (has_hi) {
      w.point[k] = hi;
    }
  }
  return w;
}

namespace {

// Dense exact phase-1 simplex tableau.
struct Tableau {
  int rows, cols;  // cols includes rhs
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;

  Rational& at(int i, int j) { return t[i][j]; }

  void pivot(int pr, int pc) {
    Rational piv = t[pr][pc];
    for (auto& x : t[pr]) x /= piv;
    for (int i = 0; i <= rows; ++i) {
      if (i == pr) continue;
      Rational f = t[i][pc];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }
};

}  // namespace

LpWitness feasible_simplex(const IneqSystem& sys) {
  const int n = sys.nvars;
  const int m = static_cast<int>(sys.size());
  if (m == 0) return {true, std::vector<Rational>(n, Rational(0))};

  // variables: u_0..u_{n-1}, w_0..w_{n-1} (x = u - w), surplus s_i, artificial a_i
  const int nu = 2 * n, ns = m, na = m;
  const int cols = nu + ns + na + 1;

  Tableau tb;
  tb.rows = m;
  tb.cols = cols;
  tb.t.assign(m + 1, std::vector<Rational>(cols, Rational(0)));
  tb.basis.assign(m, -1);

  for (int i = 0; i < m; ++i) {
    // row: sum a_j x_j - s_i = b_i, oriented so rhs >= 0
    Rational b = sys.rhs[i];
    int sign = (b < 0) ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      tb.at(i, j) = Rational(sign) * sys.rows[i][j];
      tb.at(i, n + j) = Rational(-sign) * sys.rows[i][j];
    }
    tb.at(i, nu + i) = Rational(-sign);
    tb.at(i, nu + ns + i) = 1;
    tb.at(i, cols - 1) = Rational(sign) * b;
    tb.basis[i] = nu + ns + i;
  }
  // phase-1 objective: minimize sum of artificials -> row = -(sum of rows)
  for (int j = 0; j < cols; ++j) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += tb.at(i, j);
    tb.at(m, j) = -s;
  }
  for (int i = 0; i < m; ++i) tb.at(m, nu + ns + i) = 0;

  const long max_iter = 8000L + 50L * m * (n + 1);
  long iter = 0;
  while (true) {
    if (++iter > max_iter) throw std::runtime_error("simplex: iteration limit");
    // Bland: smallest index with negative reduced cost
    int pc = -1;
    for (int j = 0; j < cols - 1; ++j)
      if (tb.at(m, j) < 0) { pc = j; break; }
    if (pc < 0) break;
    int pr = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (tb.at(i, pc) <= 0) continue;
      Rational ratio = tb.at(i, cols - 1) / tb.at(i, pc);
      if (pr < 0 || ratio < best || (ratio == best && tb.basis[i] < tb.basis[pr])) {
        pr = i;
        best = ratio;
      }
    }
    if (pr < 0) throw std::logic_error("simplex: phase-1 unbounded");
    tb.pivot(pr, pc);
  }

  if (tb.at(m, cols - 1) != 0) return {false, {}};

  LpWitness w;
  w.feasible = true;
  w.point.assign(n, Rational(0));
  for (int i = 0; i < m; ++i) {
    int b = tb.basis[i];
    if (b < n) w.point[b] += tb.at(i, cols - 1);
    else if (b < 2 * n) w.point[b - n] -= tb.at(i, cols - 1);
  }
  return w;
}

LpWitness lp_feasible(const IneqSystem& sys) {
  return sys.nvars <= 4 ? feasible_fourier_motzkin(sys) : feasible_simplex(sys);
}

}  // namespace rootreg

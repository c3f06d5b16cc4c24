#include "rootreg/regularity.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rootreg/lp.hpp"

namespace rootreg {

namespace {

// Positive counterparts of the excluded roots.
std::vector<RootCoords> gammas(const Parabolic& p) {
  std::vector<RootCoords> g;
  g.reserve(p.sigma_q_perp.size());
  for (const auto& b : p.sigma_q_perp) {
    RootCoords r = b;
    for (auto& x : r) x = -x;
    g.push_back(std::move(r));
  }
  std::sort(g.begin(), g.end());
  return g;
}

// Constraint pruning.  gamma >= 1 is implied when gamma = a + b with both
// summands in the set; gamma <= t is implied when gamma + b stays in the
// set for some member b (then gamma <= t - 1).  Both follow by induction
// on height, so the reduced system has the same solution set.
struct PrunedSystem {
  std::vector<RootCoords> lower, upper;
};

PrunedSystem prune(const std::vector<RootCoords>& g) {
  std::set<RootCoords> in(g.begin(), g.end());
  PrunedSystem ps;
  for (const auto& r : g) {
    bool decomposable = false;
    for (const auto& a : g) {
      RootCoords b(r.size());
      bool ok = true;
      for (size_t i = 0; i < r.size(); ++i) {
        b[i] = r[i] - a[i];
        if (b[i] < 0) ok = false;
      }
      if (!ok || b == r || std::all_of(b.begin(), b.end(), [](int x) { return x == 0; }))
        continue;
      if (in.count(b)) { decomposable = true; break; }
    }
    if (!decomposable) ps.lower.push_back(r);

    bool extendable = false;
    for (const auto& b : g) {
      RootCoords s(r.size());
      for (size_t i = 0; i < r.size(); ++i) s[i] = r[i] + b[i];
      if (in.count(s)) { extendable = true; break; }
    }
    if (!extendable) ps.upper.push_back(r);
  }
  return ps;
}

IneqSystem build_system(const PrunedSystem& ps, int rank, const Rational& t) {
  IneqSystem sys(rank);
  for (const auto& gma : ps.lower) {
    std::vector<Rational> c(rank);
    for (int i = 0; i < rank; ++i) c[i] = gma[i];
    sys.add(std::move(c), Rational(1));
  }
  for (const auto& gma : ps.upper) {
    std::vector<Rational> c(rank);
    for (int i = 0; i < rank; ++i) c[i] = -gma[i];
    sys.add(std::move(c), -t);
  }
  return sys;
}

Integer denominator_bound(const std::vector<RootCoords>& g, int rank) {
  Integer c = 1;
  for (const auto& r : g)
    for (int x : r) c = std::max(c, Integer(std::abs(x)));
  Integer d = 1;
  for (int i = 2; i <= rank + 1; ++i) d *= i;
  Integer cp = 1;
  for (int i = 0; i < rank + 1; ++i) cp *= c;
  return d * cp;
}

}  // namespace

bool r0_feasible(const Parabolic& p, const Rational& t) {
  if (p.S.empty()) throw std::invalid_argument("r0_feasible: empty S, r0 undefined");
  if (t < 1) return false;  // the pair (beta, beta) already forces t >= 1
  auto g = gammas(p);
  auto ps = prune(g);
  return lp_feasible(build_system(ps, p.data->system.rank, t)).feasible;
}

RegularityResult r0(const Parabolic& p) {
  if (p.S.empty()) throw std::invalid_argument("r0: empty S, r0 undefined");
  const int rank = p.data->system.rank;
  auto g = gammas(p);
  auto ps = prune(g);
  RegularityResult res;
  res.denominator_bound = denominator_bound(g, rank);
  const Integer& D = res.denominator_bound;
  const Rational gap = Rational(1, D * D);

  auto feasible_at = [&](const Rational& t) -> LpWitness {
    ++res.feasibility_calls;
    if (t < 1) return {false, {}};
    return lp_feasible(build_system(ps, rank, t));
  };

  // Interior starting point: 1 on S, 0 elsewhere; every gamma evaluates to
  // a positive integer there.
  CoweightVector s0;
  s0.coords.assign(rank, Rational(0));
  for (int i : p.S) s0.coords[i] = 1;
  Rational m0, M0;
  bool first = true;
  for (const auto& gma : g) {
    Rational v = s0.pair(gma);
    if (v < 1) throw std::logic_error("r0: starting point not in the cone");
    if (first) { m0 = M0 = v; first = false; }
    else { m0 = std::min(m0, v); M0 = std::max(M0, v); }
  }

  Rational lo = 1, hi = M0 / m0;  // optimum lies in [1, hi]
  LpWitness w_at_value;
  Rational value;

  auto certify = [&](const Rational& cand) -> bool {
    if (denominator(cand) > D) return false;
    LpWitness w = feasible_at(cand);
    if (!w.feasible) return false;
    if (feasible_at(cand - gap).feasible) return false;
    value = cand;
    w_at_value = std::move(w);
    return true;
  };

  if (certify(Rational(1))) {
    // r0 = 1
  } else {
    LpWitness whi = feasible_at(hi);
    if (!whi.feasible) throw std::logic_error("r0: upper bound infeasible");
    bool done = false;
    if (hi == 1) { value = hi; w_at_value = whi; done = true; }
    int iter = 0, max_iter = 4096;
    while (!done) {
      if (++iter > max_iter) throw std::runtime_error("r0: bisection did not converge");
      // try to pin the optimum early by rational reconstruction
      Rational cand = simplest_between(lo, hi);
      if (cand > lo && denominator(cand) <= D && certify(cand)) { done = true; break; }
      if (hi - lo < gap) {
        // at most one denominator-<=D rational survives in (lo, hi]
        if (cand == lo) cand = hi;
        if (certify(cand)) { done = true; break; }
        throw std::logic_error("r0: certification failed after convergence");
      }
      Rational mid = (lo + hi) / 2;
      LpWitness wm = feasible_at(mid);
      if (wm.feasible) { hi = mid; whi = std::move(wm); }
      else lo = mid;
    }
  }

  res.value = value;
  res.witness.coords = w_at_value.point;

  // Tight pairs at the witness: ratios attaining the optimum.
  Rational m, M;
  std::vector<Rational> vals;
  vals.reserve(g.size());
  first = true;
  for (const auto& gma : g) {
    Rational v = res.witness.pair(gma);
    vals.push_back(v);
    if (first) { m = M = v; first = false; }
    else { m = std::min(m, v); M = std::max(M, v); }
  }
  if (M != value * m)
    throw std::logic_error("r0: witness ratio does not attain the certified value");
  for (size_t i = 0; i < g.size(); ++i) {
    if (vals[i] != M) continue;
    for (size_t j = 0; j < g.size(); ++j) {
      if (vals[j] != m) continue;
      RootCoords bi = g[i], bj = g[j];
      for (auto& x : bi) x = -x;
      for (auto& x : bj) x = -x;
      res.tight_pairs.push_back({bi, bj});
    }
  }
  return res;
}

Rational r_min(const RestrictedRootData& data) {
  MinCodim mc = min_codim_v(data);
  Rational best = 0;
  for (int i : mc.argmin) {
    Parabolic p = standard_parabolic(data, {i});
    best = std::max(best, r0(p).value);
  }
  return best;
}

int coarse_count(const Parabolic& p) {
  if (p.S.empty()) throw std::invalid_argument("coarse_count: empty S");
  std::set<RootCoords> excluded(p.sigma_q_perp.begin(), p.sigma_q_perp.end());
  int count = 0;
  for (const auto& cls : coarse_classes(p.data->system)) {
    bool inside = std::all_of(cls.members.begin(), cls.members.end(),
                              [&](const RootCoords& r) { return excluded.count(r) > 0; });
    if (inside) ++count;
  }
  return count;
}

}  // namespace rootreg

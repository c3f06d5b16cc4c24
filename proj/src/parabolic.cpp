#include "rootreg/parabolic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rootreg {

Parabolic standard_parabolic(const RestrictedRootData& data, const std::set<int>& S) {
  for (int i : S)
    if (i < 0 || i >= data.system.rank)
      throw std::invalid_argument("standard_parabolic: simple-root index out of range");
  Parabolic p;
  p.data = &data;
  p.S = S;
  for (size_t k = 0; k < data.system.roots.size(); ++k) {
    const RootCoords& r = data.system.roots[k];
    bool excluded = false;
    if (!data.system.positive[k]) {
      for (int i : S)
        if (r[i] != 0) { excluded = true; break; }
    }
    if (excluded) {
      p.sigma_q_perp.push_back(r);
      p.codim += data.mult(r);
    } else {
      p.sigma_q.push_back(r);
    }
  }
  return p;
}

ConeResult cone_contains(const Parabolic& p, const CoweightVector& s) {
  if (s.coords.size() != static_cast<size_t>(p.data->system.rank))
    throw std::invalid_argument("cone_contains: coweight rank mismatch");
  if (p.S.empty()) return {true, true};
  for (const auto& beta : p.sigma_q_perp)
    if (s.pair(beta) >= 0) return {false, false};
  return {true, false};
}

MinCodim min_codim_v(const RestrictedRootData& data) {
  MinCodim out;
  out.v = std::numeric_limits<int>::max();
  for (int i = 0; i < data.system.rank; ++i) {
    Parabolic p = standard_parabolic(data, {i});
    if (p.codim < out.v) {
      out.v = p.codim;
      out.argmin = {i};
    } else if (p.codim == out.v) {
      out.argmin.push_back(i);
    }
  }
  return out;
}

}  // namespace rootreg

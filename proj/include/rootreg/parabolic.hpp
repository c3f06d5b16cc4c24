#pragma once

#include <set>
#include <vector>

#include "rootreg/rational.hpp"
#include "rootreg/rootsystem.hpp"

namespace rootreg {

// Element of the split Cartan in the pairing normalization alpha_i(s) =
// coords[i]; beta(s) extends linearly over the integer root coordinates.
struct CoweightVector {
  std::vector<Rational> coords;

  Rational pair(const RootCoords& beta) const {
    Rational v = 0;
    for (size_t i = 0; i < coords.size(); ++i) v += Rational(beta[i]) * coords[i];
    return v;
  }
};

// Standard parabolic q_S.  sigma_q_perp holds the excluded (negative)
// roots: beta is excluded iff beta < 0 and some alpha in S appears in it.
struct Parabolic {
  const RestrictedRootData* data = nullptr;
  std::set<int> S;  // 0-based simple-root indices
  std::vector<RootCoords> sigma_q;
  std::vector<RootCoords> sigma_q_perp;
  int codim = 0;  // sum of m(beta) over sigma_q_perp
};

Parabolic standard_parabolic(const RestrictedRootData& data, const std::set<int>& S);

struct ConeResult {
  bool contains = false;
  bool vacuous = false;  // S empty: the cone degenerates to all of a
};

// Strict membership in the negative cone: beta(s) < 0 for every excluded
// root.
ConeResult cone_contains(const Parabolic& p, const CoweightVector& s);

struct MinCodim {
  int v = 0;
  std::vector<int> argmin;  // all singleton indices achieving v, ascending
};

// Minimal codimension over proper standard parabolics.  Codimension is
// strictly monotone under enlarging S, so the singleton scan is exhaustive
// (the rank <= 4 test suite re-proves this by full-subset brute force).
MinCodim min_codim_v(const RestrictedRootData& data);

}  // namespace rootreg

#pragma once

#include <utility>
#include <vector>

#include "rootreg/parabolic.hpp"
#include "rootreg/rational.hpp"

namespace rootreg {

struct RegularityResult {
  Rational value;
  CoweightVector witness;  // attains the infimum (the normalized LP has a vertex optimum)
  std::vector<std::pair<RootCoords, RootCoords>> tight_pairs;  // beta(s)/beta'(s) = value
  Integer denominator_bound;  // D in the certificate: feasible(value), infeasible(value - 1/D)
  int feasibility_calls = 0;
};

// Feasibility oracle for the critical-regularity program: true iff some s
// satisfies beta(s) <= -1 for all excluded beta together with
// beta(s) >= t * beta'(s) for every ordered pair.  Solved on the
// feasibility-equivalent normalized form { 1 <= -beta(s) <= t } after
// pruning rows implied by sums of excluded roots.
// Throws std::invalid_argument when p.S is empty (r0 undefined).
bool r0_feasible(const Parabolic& p, const Rational& t);

// r0(q) = inf over the negative cone of max beta(s)/beta'(s), computed by
// exact bisection with rational reconstruction and a two-sided certificate.
RegularityResult r0(const Parabolic& p);

// Max of r0 over the standard parabolics of codimension exactly v(g).
Rational r_min(const RestrictedRootData& data);

// Number of coarse classes entirely contained in sigma_q_perp.
int coarse_count(const Parabolic& p);

}  // namespace rootreg

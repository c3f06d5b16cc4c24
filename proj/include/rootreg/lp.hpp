#pragma once

#include <vector>

#include "rootreg/rational.hpp"

namespace rootreg {

// Linear inequality system  A x >= b  over free rational variables.
struct IneqSystem {
  int nvars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  explicit IneqSystem(int n) : nvars(n) {}
  void add(std::vector<Rational> coef, Rational b);
  size_t size() const { return rows.size(); }
};

struct LpWitness {
  bool feasible = false;
  std::vector<Rational> point;  // a feasible point when feasible
};

// Exact Fourier-Motzkin elimination with back-substituted witness.
// Exponential in principle; used at small rank.
LpWitness feasible_fourier_motzkin(const IneqSystem& sys);

// Exact phase-1 simplex (Bland's rule) on the split-variable standard form.
LpWitness feasible_simplex(const IneqSystem& sys);

// Dispatch: Fourier-Motzkin for nvars <= 4, simplex above.
LpWitness lp_feasible(const IneqSystem& sys);

}  // namespace rootreg

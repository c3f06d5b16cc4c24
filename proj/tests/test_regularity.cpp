#include <doctest.h>

#include <set>
#include <stdexcept>
#include <tuple>

#include <cmath>

#include "oracles.hpp"
#include "rootreg/regularity.hpp"

using namespace rootreg;

namespace {

RestrictedRootData split_form(RootType t, int rank, int dim_g) {
  return make_restricted(build_root_system(t, rank), dim_g, 1, 1, 1);
}

}  // namespace

TEST_CASE("feasibility oracle on the worked examples") {
  RestrictedRootData sl3 = split_form(RootType::A, 2, 8);
  Parabolic p = standard_parabolic(sl3, {0});
  CHECK(r0_feasible(p, Rational(1)));

  RestrictedRootData sp4 = split_form(RootType::C, 2, 10);
  Parabolic q = standard_parabolic(sp4, {0});
  CHECK_FALSE(r0_feasible(q, Rational(3, 2)));
  CHECK(r0_feasible(q, Rational(2)));

  Parabolic empty = standard_parabolic(sl3, {});
  CHECK_THROWS_AS(r0_feasible(empty, Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(r0(empty), std::invalid_argument);
}

TEST_CASE("r0 = |S| for the special linear family (ranks <= 4 here)") {
  for (int n = 1; n <= 4; ++n) {
    RestrictedRootData data = split_form(RootType::A, n, (n + 1) * (n + 1) - 1);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::set<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) s.insert(i);
      Parabolic p = standard_parabolic(data, s);
      CHECK(r0(p).value == Rational(static_cast<int>(s.size())));
    }
  }
}

TEST_CASE("symplectic family: first node gives 2, long node gives 1") {
  for (int n = 2; n <= 4; ++n) {
    RestrictedRootData data = split_form(RootType::C, n, n * (2 * n + 1));
    CHECK(r0(standard_parabolic(data, {0})).value == Rational(2));
    CHECK(r0(standard_parabolic(data, {n - 1})).value == Rational(1));
  }
  // the second node: 1 exactly at rank 2, then 2 (2e_2 = (e_2-e_3) + (e_2+e_3))
  RestrictedRootData c2 = split_form(RootType::C, 2, 10);
  CHECK(r0(standard_parabolic(c2, {1})).value == Rational(1));
  RestrictedRootData c3 = split_form(RootType::C, 3, 21);
  CHECK(r0(standard_parabolic(c3, {1})).value == Rational(2));
  RestrictedRootData c4 = split_form(RootType::C, 4, 36);
  CHECK(r0(standard_parabolic(c4, {1})).value == Rational(2));
}

TEST_CASE("r0 >= 1 and the certificate is two-sided") {
  for (auto [t, n, dim] : std::vector<std::tuple<RootType, int, int>>{
           {RootType::B, 3, 21}, {RootType::G2, 2, 14}, {RootType::BC, 2, 24}}) {
    RestrictedRootData data = make_restricted(build_root_system(t, n), dim,
                                              t == RootType::BC ? 0 : 1, t == RootType::BC ? 2 : 1,
                                              t == RootType::BC ? 2 : 1, 1);
    for (int i = 0; i < n; ++i) {
      Parabolic p = standard_parabolic(data, {i});
      RegularityResult res = r0(p);
      CHECK(res.value >= 1);
      CHECK(r0_feasible(p, res.value));
      CHECK_FALSE(r0_feasible(p, res.value - Rational(1, res.denominator_bound)));
      // witness attains the value: max ratio over excluded pairs equals it
      CHECK_FALSE(res.tight_pairs.empty());
      for (const auto& [beta, betap] : res.tight_pairs)
        CHECK(res.witness.pair(beta) == res.value * res.witness.pair(betap));
    }
  }
}

TEST_CASE("scale invariance: r0 ignores multiplicities") {
  RootSystem bc2 = build_root_system(RootType::BC, 2);
  RestrictedRootData a = make_restricted(bc2, 24, 0, 2, 2, 1);   // su(2,3)
  RestrictedRootData b = make_restricted(bc2, 55, 0, 4, 4, 3);   // sp(4,6)
  for (int i = 0; i < 2; ++i)
    CHECK(r0(standard_parabolic(a, {i})).value == r0(standard_parabolic(b, {i})).value);
}

TEST_CASE("bisection agrees with the dense grid oracle (spot checks)") {
  for (auto [t, n, dim] : std::vector<std::tuple<RootType, int, int>>{{RootType::A, 3, 15},
                                                                      {RootType::C, 3, 21},
                                                                      {RootType::G2, 2, 14},
                                                                      {RootType::F4, 4, 52},
                                                                      {RootType::BC, 2, 24}}) {
    RestrictedRootData data = make_restricted(build_root_system(t, n), dim,
                                              t == RootType::BC ? 0 : 1, t == RootType::BC ? 2 : 1,
                                              t == RootType::BC ? 2 : 1, 1);
    for (int i = 0; i < n; ++i) {
      Parabolic p = standard_parabolic(data, {i});
      double exact = to_double(r0(p).value);
      double grid = oracles::r0_grid_search(p);
      CHECK(std::fabs(exact - grid) <= 1e-9);
    }
  }
}

TEST_CASE("r_min for the split classical families") {
  CHECK(r_min(split_form(RootType::A, 3, 15)) == Rational(1));   // sl(4,R)
  CHECK(r_min(split_form(RootType::B, 3, 21)) == Rational(1));   // so(3,4)
  CHECK(r_min(split_form(RootType::C, 2, 10)) == Rational(2));   // sp(4,R)
  CHECK(r_min(split_form(RootType::C, 3, 21)) == Rational(2));   // sp(6,R)
  CHECK(r_min(split_form(RootType::D, 4, 28)) == Rational(1));   // so(4,4)
}

TEST_CASE("coarse_count: split counts match codim; doubles collapse") {
  RestrictedRootData sl5 = split_form(RootType::A, 4, 24);
  Parabolic p = standard_parabolic(sl5, {0});
  CHECK(coarse_count(p) == 4);
  CHECK(coarse_count(p) == p.codim);

  RootSystem bc2 = build_root_system(RootType::BC, 2);
  RestrictedRootData su23 = make_restricted(bc2, 24, 0, 2, 2, 1);
  Parabolic q = standard_parabolic(su23, {0});
  CHECK(q.codim == 7);
  CHECK(coarse_count(q) == 3);  // {e1-e2}, {e1+e2}, {e1, 2e1}
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rootreg {

// Roots are kept in simple-root integer coordinates throughout: the
// coefficient queries the parabolic machinery needs are then exact integer
// lookups.  Euclidean realizations are never stored.
using RootCoords = std::vector<int>;

enum class RootType { A, B, C, D, E6, E7, E8, F4, G2, BC };

std::string type_name(RootType t);
RootType parse_type(const std::string& s);

struct RootSystem {
  RootType type;
  int rank = 0;
  // all roots, negatives included, sorted lexicographically
  std::vector<RootCoords> roots;
  std::vector<bool> positive;           // parallel to roots
  std::vector<RootCoords> short_doubled;  // BC only: beta with 2*beta also a root

  int root_count() const { return static_cast<int>(roots.size()); }
  int positive_count() const;
  bool contains(const RootCoords& r) const;
  int index_of(const RootCoords& r) const;  // -1 if absent

  // Simple reflection s_i in simple-root coordinates (exact).
  RootCoords reflect_simple(const RootCoords& r, int i) const;

  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  std::vector<std::vector<int>> cartan_;
};

// Valid (type, rank) pairs: A_n n>=1, B_n n>=2, C_n n>=2, D_n n>=4,
// E6/E7/E8, F4, G2, BC_n n>=1.  Throws std::invalid_argument naming the
// violated constraint otherwise.
RootSystem build_root_system(RootType type, int rank);
RootSystem build_root_system(const std::string& type, int rank);

// Classical root count for (type, rank); used as a construction check.
int expected_root_count(RootType type, int rank);

struct CoarseClass {
  RootCoords representative;        // shortest member
  std::vector<RootCoords> members;  // {beta} or {beta, 2beta}
};

// Partition of the roots into positive-proportionality classes.
std::vector<CoarseClass> coarse_classes(const RootSystem& sys);

// True iff b = q*a for a positive rational q (exact integer test).
bool positively_proportional(const RootCoords& a, const RootCoords& b);

struct RestrictedRootData {
  RootSystem system;
  std::map<RootCoords, int> multiplicity;  // m(beta) >= 1, m(beta) = m(-beta)
  int dim_g = 0;
  int real_rank = 0;
  int center_dim_ma = 0;  // dim(m + a), derived from the bookkeeping

  int mult(const RootCoords& r) const;
  // dim_g = center_dim_ma + sum of multiplicities; throws on mismatch.
  void validate(const std::string& context) const;
};

// Assemble restricted data from per-length multiplicities.
//   single: multiplicity in simply-laced types (A, D, E)
//   short_m/long_m: the two lengths in B, C, F4, G2
//   BC: short_m for e_i, long_m for e_i +- e_j, double_m for 2 e_i
RestrictedRootData make_restricted(const RootSystem& sys, int dim_g, int single,
                                   int short_m = 0, int long_m = 0, int double_m = 0);

}  // namespace rootreg

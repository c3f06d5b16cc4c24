#include "rootreg/rootsystem.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rootreg {

namespace {

std::vector<std::vector<int>> chain_cartan(int n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

// Entry a[i][j] = <alpha_j, alpha_i^vee>, so the reflection s_i subtracts
// (sum_j a[i][j} beta_j) * alpha_i.
std::vector<std::vector<int>> cartan_matrix(RootType t, int n) {
  switch (t) {
    case RootType::A:
      return chain_cartan(n);
    case RootType::B:
    case RootType::BC: {
      auto a = chain_cartan(n);
      if (n >= 2) a[n - 1][n - 2] = -2;  // alpha_n short
      return a;
    }
    case RootType::C: {
      auto a = chain_cartan(n);
      if (n >= 2) a[n - 2][n - 1] = -2;  // alpha_n long
      return a;
    }
    case RootType::D: {
      auto a = chain_cartan(n - 1);
      a.resize(n);
      for (auto& row : a) row.resize(n, 0);
      a[n - 1][n - 1] = 2;
      a[n - 1][n - 3] = a[n - 3][n - 1] = -1;  // fork at alpha_{n-2}
      return a;
    }
    case RootType::G2:
      return {{2, -3}, {-1, 2}};  // alpha_1 short: highest root 3a1+2a2
    case RootType::F4: {
      auto a = chain_cartan(4);
      a[2][1] = -2;  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      return a;
    }
    case RootType::E6:
    case RootType::E7:
    case RootType::E8: {
      // Bourbaki: branch node alpha_2 attached to alpha_4,
      // chain 1-3-4-5-6(-7)(-8).
      auto a = std::vector<std::vector<int>>(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(4, 5);
      link(5, 6);
      link(2, 4);
      if (n >= 7) link(6, 7);
      if (n >= 8) link(7, 8);
      return a;
    }
  }
  throw std::logic_error("cartan_matrix: unreachable");
}

// Squared simple-root lengths (x2 to stay integral), per type.
std::vector<int> simple_norms2x2(RootType t, int n) {
  std::vector<int> v(n, 4);
  switch (t) {
    case RootType::B:
    case RootType::BC:
      v[n - 1] = 2;
      break;
    case RootType::C:
      v[n - 1] = 8;
      break;
    case RootType::F4:
      v[2] = v[3] = 2;
      break;
    case RootType::G2:
      v[1] = 12;
      break;
    default:
      break;
  }
  return v;
}

void check_rank(RootType t, int rank) {
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("build_root_system(" + type_name(t) + ", " +
                                std::to_string(rank) + "): " + msg);
  };
  switch (t) {
    case RootType::A:
    case RootType::BC:
      if (rank < 1) fail("rank must be >= 1");
      break;
    case RootType::B:
    case RootType::C:
      if (rank < 2) fail("rank must be >= 2");
      break;
    case RootType::D:
      if (rank < 4) fail("rank must be >= 4");
      break;
    case RootType::E6:
      if (rank != 6) fail("rank must be 6");
      break;
    case RootType::E7:
      if (rank != 7) fail("rank must be 7");
      break;
    case RootType::E8:
      if (rank != 8) fail("rank must be 8");
      break;
    case RootType::F4:
      if (rank != 4) fail("rank must be 4");
      break;
    case RootType::G2:
      if (rank != 2) fail("rank must be 2");
      break;
  }
}

}  // namespace

std::string type_name(RootType t) {
  switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::E6: return "E6";
    case RootType::E7: return "E7";
    case RootType::E8: return "E8";
    case RootType::F4: return "F4";
    case RootType::G2: return "G2";
    case RootType::BC: return "BC";
  }
  return "?";
}

RootType parse_type(const std::string& s) {
  if (s == "A") return RootType::A;
  if (s == "B") return RootType::B;
  if (s == "C") return RootType::C;
  if (s == "D") return RootType::D;
  if (s == "E6") return RootType::E6;
  if (s == "E7") return RootType::E7;
  if (s == "E8") return RootType::E8;
  if (s == "F4") return RootType::F4;
  if (s == "G2") return RootType::G2;
  if (s == "BC") return RootType::BC;
  throw std::invalid_argument("unknown root-system type: " + s);
}

int RootSystem::positive_count() const {
  return static_cast<int>(std::count(positive.begin(), positive.end(), true));
}

bool RootSystem::contains(const RootCoords& r) const { return index_of(r) >= 0; }

int RootSystem::index_of(const RootCoords& r) const {
  auto it = std::lower_bound(roots.begin(), roots.end(), r);
  if (it != roots.end() && *it == r) return static_cast<int>(it - roots.begin());
  return -1;
}

RootCoords RootSystem::reflect_simple(const RootCoords& r, int i) const {
  int c = 0;
  for (int j = 0; j < rank; ++j) c += cartan_[i][j] * r[j];
  RootCoords out = r;
  out[i] -= c;
  return out;
}

int expected_root_count(RootType type, int rank) {
  switch (type) {
    case RootType::A: return rank * (rank + 1);
    case RootType::B:
    case RootType::C: return 2 * rank * rank;
    case RootType::D: return 2 * rank * (rank - 1);
    case RootType::BC: return 2 * rank * rank + 2 * rank;
    case RootType::E6: return 72;
    case RootType::E7: return 126;
    case RootType::E8: return 240;
    case RootType::F4: return 48;
    case RootType::G2: return 12;
  }
  return 0;
}

RootSystem build_root_system(RootType type, int rank) {
  check_rank(type, rank);
  RootSystem sys;
  sys.type = type;
  sys.rank = rank;
  // BC_n is realized as B_n plus the doubled short roots (B_1 := A_1).
  RootType gen_type = (type == RootType::BC)
                          ? (rank == 1 ? RootType::A : RootType::B)
                          : type;
  sys.cartan_ = cartan_matrix(gen_type, rank);

  // Closure of the simple roots under simple reflections.
  std::set<RootCoords> seen;
  std::vector<RootCoords> frontier;
  for (int i = 0; i < rank; ++i) {
    RootCoords a(rank, 0);
    a[i] = 1;
    seen.insert(a);
    frontier.push_back(a);
  }
  int expected = expected_root_count(gen_type, rank);
  int depth_bound = expected;  // = 2 * (number of positive roots)
  for (int depth = 0; depth < depth_bound && !frontier.empty(); ++depth) {
    std::vector<RootCoords> next;
    for (const auto& r : frontier) {
      for (int i = 0; i < rank; ++i) {
        RootCoords m = sys.reflect_simple(r, i);
        if (seen.insert(m).second) next.push_back(m);
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) throw std::logic_error("root closure did not terminate");

  std::vector<RootCoords> all(seen.begin(), seen.end());

  if (type == RootType::BC) {
    // Doubled short roots: 2*beta for each short beta of the B_n base
    // (for BC_1 the whole A_1 base doubles).
    auto n2 = simple_norms2x2(rank == 1 ? RootType::A : RootType::B, rank);
    auto norm4 = [&](const RootCoords& r) {  // 4*(r,r)
      long s = 0;
      for (int i = 0; i < rank; ++i) {
        int c = 0;
        for (int j = 0; j < rank; ++j) c += sys.cartan_[i][j] * r[j];
        s += static_cast<long>(r[i]) * c * n2[i];
      }
      return s;
    };
    std::vector<RootCoords> doubled;
    for (const auto& r : all) {
      bool is_short = (rank == 1) || norm4(r) == 4;
      if (!is_short) continue;
      RootCoords d = r;
      for (auto& x : d) x *= 2;
      doubled.push_back(d);
      if (std::any_of(r.begin(), r.end(), [](int x) { return x > 0; }))
        sys.short_doubled.push_back(r);
    }
    all.insert(all.end(), doubled.begin(), doubled.end());
    std::sort(sys.short_doubled.begin(), sys.short_doubled.end());
  }

  std::sort(all.begin(), all.end());
  sys.roots = std::move(all);
  sys.positive.resize(sys.roots.size());
  for (size_t k = 0; k < sys.roots.size(); ++k) {
    const auto& r = sys.roots[k];
    bool any_pos = std::any_of(r.begin(), r.end(), [](int x) { return x > 0; });
    bool any_neg = std::any_of(r.begin(), r.end(), [](int x) { return x < 0; });
    if (any_pos && any_neg) throw std::logic_error("mixed-sign root generated");
    sys.positive[k] = any_pos;
  }

  if (sys.root_count() != expected_root_count(type, rank))
    throw std::logic_error("root count mismatch for " + type_name(type) + "_" +
                           std::to_string(rank));
  if (2 * sys.positive_count() != sys.root_count())
    throw std::logic_error("positive/negative imbalance");
  return sys;
}

RootSystem build_root_system(const std::string& type, int rank) {
  return build_root_system(parse_type(type), rank);
}

bool positively_proportional(const RootCoords& a, const RootCoords& b) {
  // b = (p/q) a with p, q > 0  <=>  q*b == p*a for the reduced ratio at the
  // first nonzero coordinate, same sign.
  int p = 0, q = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 && b[i] == 0) continue;
    if (a[i] == 0 || b[i] == 0) return false;
    p = b[i];
    q = a[i];
    break;
  }
  if (q == 0) return false;  // a = b = 0 does not occur for roots
  if ((p > 0) != (q > 0)) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (q * b[i] != p * a[i]) return false;
  return true;
}

std::vector<CoarseClass> coarse_classes(const RootSystem& sys) {
  std::vector<CoarseClass> classes;
  std::vector<bool> used(sys.roots.size(), false);
  for (size_t i = 0; i < sys.roots.size(); ++i) {
    if (used[i]) continue;
    CoarseClass c;
    c.members.push_back(sys.roots[i]);
    used[i] = true;
    for (size_t j = i + 1; j < sys.roots.size(); ++j) {
      if (!used[j] && positively_proportional(sys.roots[i], sys.roots[j])) {
        c.members.push_back(sys.roots[j]);
        used[j] = true;
      }
    }
    // representative = member of minimal height
    c.representative = *std::min_element(
        c.members.begin(), c.members.end(), [](const RootCoords& x, const RootCoords& y) {
          int hx = std::accumulate(x.begin(), x.end(), 0, [](int s, int v) { return s + std::abs(v); });
          int hy = std::accumulate(y.begin(), y.end(), 0, [](int s, int v) { return s + std::abs(v); });
          return hx != hy ? hx < hy : x < y;
        });
    classes.push_back(std::move(c));
  }
  return classes;
}

int RestrictedRootData::mult(const RootCoords& r) const {
  auto it = multiplicity.find(r);
  if (it == multiplicity.end()) throw std::out_of_range("multiplicity: not a root");
  return it->second;
}

void RestrictedRootData::validate(const std::string& context) const {
  long total = 0;
  for (const auto& [r, m] : multiplicity) {
    if (m <= 0) throw std::runtime_error(context + ": nonpositive multiplicity");
    RootCoords neg = r;
    for (auto& x : neg) x = -x;
    if (mult(neg) != m) throw std::runtime_error(context + ": m(beta) != m(-beta)");
    total += m;
  }
  if (multiplicity.size() != system.roots.size())
    throw std::runtime_error(context + ": multiplicity map incomplete");
  if (center_dim_ma < 0 || center_dim_ma + total != dim_g)
    throw std::runtime_error(context + ": dimension bookkeeping failed (dim_g = " +
                             std::to_string(dim_g) + ", root dims = " + std::to_string(total) +
                             ", center = " + std::to_string(center_dim_ma) + ")");
  if (real_rank != system.rank)
    throw std::runtime_error(context + ": real rank != system rank");
}

RestrictedRootData make_restricted(const RootSystem& sys, int dim_g, int single, int short_m,
                                   int long_m, int double_m) {
  RestrictedRootData data;
  data.system = sys;
  data.dim_g = dim_g;
  data.real_rank = sys.rank;

  auto n2x2 = simple_norms2x2(sys.type == RootType::BC && sys.rank == 1 ? RootType::A
                              : sys.type == RootType::BC                ? RootType::B
                                                                        : sys.type,
                              sys.rank);
  auto norm = [&](const RootCoords& r) {
    long s = 0;
    for (int i = 0; i < sys.rank; ++i) {
      int c = 0;
      for (int j = 0; j < sys.rank; ++j) c += sys.cartan_[i][j] * r[j];
      s += static_cast<long>(r[i]) * c * n2x2[i];
    }
    return s;  // 4*(r,r)
  };

  std::set<long> norms;
  for (const auto& r : sys.roots) norms.insert(norm(r));

  // `single` doubles as the uniform multiplicity for two-length systems
  // when no short/long split was given
  if (norms.size() == 2 && sys.type != RootType::BC && short_m == 0 && long_m == 0) {
    short_m = long_m = single;
  }

  for (const auto& r : sys.roots) {
    int m;
    if (sys.type == RootType::BC) {
      long v = norm(r);
      if (sys.rank == 1) {
        // only two classes: beta and 2 beta
        m = (v == *norms.begin()) ? short_m : double_m;
      } else {
        m = (v == 4) ? short_m : (v == 8 ? long_m : double_m);  // e_i / e_i+-e_j / 2e_i
      }
    } else if (norms.size() == 1) {
      m = single;
    } else {
      m = (norm(r) == *norms.begin()) ? short_m : long_m;
    }
    data.multiplicity[r] = m;
  }

  long total = 0;
  for (const auto& [r, m] : data.multiplicity) total += m;
  data.center_dim_ma = dim_g - static_cast<int>(total);
  data.validate(type_name(sys.type) + "_" + std::to_string(sys.rank));
  return data;
}

}  // namespace rootreg

#include "rootreg/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rootreg {

namespace {

using json = nlohmann::json;

std::string fmt(const char* pattern, const std::vector<int>& params) {
  // '#' placeholders are replaced by successive parameters
  std::string out;
  size_t pi = 0;
  for (const char* p = pattern; *p; ++p) {
    if (*p == '#') out += std::to_string(params.at(pi++));
    else out += *p;
  }
  return out;
}

struct Builder {
  Catalog cat;

  void entry(const std::string& family, std::vector<int> params, const char* name_pattern,
             RestrictedSpec rs, int dim_g, int n_g, int d_g, int v, int r,
             std::vector<std::string> notes = {}) {
    RealFormEntry e;
    e.family = family;
    e.params = params;
    e.name = fmt(name_pattern, params);
    e.restricted = std::move(rs);
    e.dim_g = dim_g;
    e.n_g = n_g;
    e.d_g = d_g;
    e.expected_v = v;
    e.expected_r = r;
    e.footnotes = std::move(notes);
    cat.entries.push_back(std::move(e));
  }
};

}  // namespace

Catalog build_catalog(int max_rank, int max_second) {
  if (max_rank < 1) throw std::invalid_argument("build_catalog: max_rank >= 1 required");
  Builder b;
  b.cat.max_rank = max_rank;
  b.cat.max_second = std::max(max_second, max_rank);
  const int M = b.cat.max_second;

  // ---- classical R-split ----
  for (int n = 2; n - 1 <= max_rank; ++n) {
    std::vector<std::string> notes;
    if (n == 4) notes.push_back("sl(4,R) = so(3,3); d = 5 here instead of 2n-2");
    b.entry("sl(n,R)", {n}, "sl(#,R)", {"A", n - 1, 1}, n * n - 1, n,
            n == 4 ? 5 : 2 * n - 2, n - 1, n - 1, notes);
  }
  for (int n = 2; n <= max_rank; ++n)
    b.entry("sp(2n,R)", {2 * n}, "sp(#,R)", {"C", n, 0, 1, 1}, n * (2 * n + 1), 2 * n,
            4 * n - 4, 2 * n - 1, 2 * n - 1);
  for (int n = 3; n <= max_rank; ++n)
    b.entry("so(n,n+1)", {n, n + 1}, "so(#,#)", {"B", n, 0, 1, 1}, n * (2 * n + 1), 2 * n + 1,
            2 * n, 2 * n - 1, 2 * n - 1);
  for (int n = 4; n <= max_rank; ++n)
    b.entry("so(n,n)", {n, n}, "so(#,#)", {"D", n, 1}, n * (2 * n - 1), 2 * n, 2 * n - 1,
            2 * n - 2, 2 * n - 2);

  // ---- complex simple, viewed as real ----
  for (int n = 2; n - 1 <= max_rank; ++n) {
    std::vector<std::string> notes;
    if (n == 4) notes.push_back("sl(4,C) = so(6,C); d = 5 here instead of 2n-2");
    b.entry("sl(n,C)", {n}, "sl(#,C)", {"A", n - 1, 2}, 2 * (n * n - 1), 2 * n,
            n == 4 ? 5 : 2 * n - 2, 2 * n - 2, n - 1, notes);
  }
  for (int n = 2; n <= max_rank; ++n)
    b.entry("sp(2n,C)", {2 * n}, "sp(#,C)", {"C", n, 0, 2, 2}, 2 * n * (2 * n + 1), 4 * n,
            4 * n - 4, 4 * n - 2, 2 * n - 1);
  for (int n = 3; n <= max_rank; ++n)
    b.entry("so(2n+1,C)", {2 * n + 1}, "so(#,C)", {"B", n, 0, 2, 2}, 2 * n * (2 * n + 1),
            4 * n + 2, 2 * n, 4 * n - 2, 2 * n - 1);
  for (int n = 4; n <= max_rank; ++n)
    b.entry("so(2n,C)", {2 * n}, "so(#,C)", {"D", n, 2}, 2 * n * (2 * n - 1), 4 * n,
            2 * n - 1, 4 * n - 4, 2 * n - 2);
  if (max_rank >= 6) b.entry("e6(C)", {}, "e6(C)", {"E6", 6, 2}, 156, 54, 26, 32, 16);
  if (max_rank >= 7) b.entry("e7(C)", {}, "e7(C)", {"E7", 7, 2}, 266, 112, 54, 54, 27);
  if (max_rank >= 8) b.entry("e8(C)", {}, "e8(C)", {"E8", 8, 2}, 496, 496, 112, 114, 57);
  if (max_rank >= 4) b.entry("f4(C)", {}, "f4(C)", {"F4", 4, 0, 2, 2}, 104, 52, 16, 30, 15);
  if (max_rank >= 2) b.entry("g2(C)", {}, "g2(C)", {"G2", 2, 0, 2, 2}, 28, 14, 6, 10, 5);

  // ---- classical non-split real forms ----
  for (int n = 2; n - 1 <= max_rank; ++n) {
    std::vector<std::string> notes;
    if (n == 2) notes.push_back("sl(2,H) = so(1,5); n = 6, d = 5 here");
    b.entry("sl(n,H)", {n}, "sl(#,H)", {"A", n - 1, 4}, 4 * n * n - 1, n == 2 ? 6 : 4 * n,
            n == 2 ? 5 : 4 * n - 2, 4 * n - 4, n - 1, notes);
  }
  for (int n = 1; n <= max_rank; ++n) {
    int m_lo = (n == 1) ? 6 : n + 2;
    for (int m = m_lo; m <= M; ++m) {
      RestrictedSpec rs;
      std::vector<std::string> notes;
      if (n == 1) {
        rs = {"A", 1, m - 1};
        notes.push_back("rank-1 restricted system B_1 = A_1");
      } else {
        rs = {"B", n, 0, m - n, 1};
      }
      b.entry("so(n,m)", {n, m}, "so(#,#)", rs, (n + m) * (n + m - 1) / 2, n + m, n + m - 1,
              n + m - 2, 2 * n - 1, notes);
    }
  }
  for (int n = 1; n <= max_rank; ++n) {
    for (int m = n; m <= M; ++m) {
      if (n == 1 && m == 1) continue;  // su(1,1) = sl(2,R)
      if (n == 2 && m == 2) {
        // su(2,2) = so(2,4) carries its own reference values
        b.entry("su(n,m)", {2, 2}, "su(#,#)", {"C", 2, 0, 2, 1}, 15, 6, 5, 4, 3,
                {"su(2,2) = so(2,4); n, d, v, r follow the so(2,4) values"});
        continue;
      }
      RestrictedSpec rs;
      if (n == m) rs = {"C", n, 0, 2, 1};
      else if (n == 1) rs = {"BC", 1, 0, 2 * (m - 1), 0, 1};
      else rs = {"BC", n, 0, 2 * (m - n), 2, 1};
      b.entry("su(n,m)", {n, m}, "su(#,#)", rs, (n + m) * (n + m) - 1, 2 * n + 2 * m,
              2 * n + 2 * m - 2, 2 * n + 2 * m - 3, 2 * n - 1);
    }
  }
  for (int n = 1; n <= max_rank; ++n) {
    for (int m = n; m <= M; ++m) {
      if (n == 1 && m == 1) continue;  // sp(2,2) = so(1,4): dedicated entry below
      RestrictedSpec rs;
      if (n == m) rs = {"C", n, 0, 4, 3};
      else if (n == 1) rs = {"BC", 1, 0, 4 * (m - 1), 0, 3};
      else rs = {"BC", n, 0, 4 * (m - n), 4, 3};
      std::vector<std::string> notes;
      if (n == 2 && m == 2)
        notes.push_back(
            "reference v = 11 is the isotropic-line value; the Lagrangian node gives codim 10");
      b.entry("sp(2n,2m)", {2 * n, 2 * m}, "sp(#,#)", rs, (n + m) * (2 * (n + m) + 1),
              4 * n + 4 * m, 4 * n + 4 * m - 4, 4 * n + 4 * m - 5, 2 * n - 1, notes);
    }
  }
  b.entry("sp(2,2)", {2, 2}, "sp(2,2)", {"A", 1, 3}, 10, 5, 4, 3, 1,
          {"sp(2,2) = so(1,4)"});
  for (int n = 4; n / 2 <= max_rank; n += 2) {
    std::vector<std::string> notes;
    if (n == 4)
      notes.push_back(
          "so*(8) = so(2,6): reference v = 9 is the isotropic-line value; the Lagrangian node "
          "gives codim 6 = so(2,6). n here follows the so*-family column (16); the so(2,6) "
          "parametrization lists 8");
    if (n == 6)
      notes.push_back(
          "reference v = 17 is the isotropic-line value; the Lagrangian node gives codim 15");
    b.entry("so*(2n) even", {2 * n}, "so*(#)", {"C", n / 2, 0, 4, 1}, n * (2 * n - 1), 4 * n,
            2 * n - 1, 4 * n - 7, n - 1, notes);
  }
  for (int n = 5; (n - 1) / 2 <= max_rank; n += 2)
    b.entry("so*(2n) odd", {2 * n}, "so*(#)", {"BC", (n - 1) / 2, 0, 4, 4, 1}, n * (2 * n - 1),
            4 * n, 2 * n - 1, 4 * n - 7, n - 2);

  // ---- exceptional real forms ----
  if (max_rank >= 6) b.entry("E_I", {}, "E_I", {"E6", 6, 1}, 78, 27, 26, 16, 16);
  if (max_rank >= 4) b.entry("E_II", {}, "E_II", {"F4", 4, 0, 2, 1}, 78, 27, 26, 21, 15);
  if (max_rank >= 2)
    b.entry("E_III", {}, "E_III", {"BC", 2, 0, 8, 6, 1}, 78, 27, 26, 21, 3);
  if (max_rank >= 2)
    b.entry("E_IV", {}, "E_IV", {"A", 2, 8}, 78, 27, 26, 16, 3,
            {"reference r = 3; an A_2 excluded set has only 2 coarse classes"});
  if (max_rank >= 7) b.entry("E_V", {}, "E_V", {"E7", 7, 1}, 133, 56, 54, 27, 27);
  if (max_rank >= 4) b.entry("E_VI", {}, "E_VI", {"F4", 4, 0, 4, 1}, 133, 56, 54, 33, 15);
  if (max_rank >= 3) b.entry("E_VII", {}, "E_VII", {"C", 3, 0, 8, 1}, 133, 56, 54, 27, 5);
  if (max_rank >= 8) b.entry("E_VIII", {}, "E_VIII", {"E8", 8, 1}, 248, 248, 112, 57, 57);
  if (max_rank >= 4) b.entry("E_IX", {}, "E_IX", {"F4", 4, 0, 8, 1}, 248, 248, 112, 57, 15);
  if (max_rank >= 4) b.entry("F_I", {}, "F_I", {"F4", 4, 1}, 52, 26, 16, 15, 15);
  b.entry("F_II", {}, "F_II", {"BC", 1, 0, 8, 0, 7}, 52, 26, 16, 15, 1);
  if (max_rank >= 2) b.entry("G", {}, "G", {"G2", 2, 1}, 14, 7, 6, 5, 5);

  // ---- isogeny aliases and exclusions (table footnotes) ----
  auto& al = b.cat.aliases;
  al["so(3,3)"] = "sl(4,R)";
  al["so(1,2)"] = "sl(2,R)";
  al["so(2,3)"] = "sp(4,R)";
  al["so(1,3)"] = "sl(2,C)";
  al["so(1,4)"] = "sp(2,2)";
  al["so(1,5)"] = "sl(2,H)";
  al["so(3,C)"] = "sl(2,C)";
  al["so(5,C)"] = "sp(4,C)";
  al["so(6,C)"] = "sl(4,C)";
  al["so*(6)"] = "su(1,3)";
  al["su(1,1)"] = "sl(2,R)";
  auto& ex = b.cat.exclusions;
  ex["so(2,2)"] = "so(2,2) is not simple";
  ex["so(4,C)"] = "so(4,C) is not simple";
  ex["so*(4)"] = "so*(4) is not simple";

  // deterministic order: family blocks as built, params ascending inside
  return std::move(b.cat);
}

namespace {

std::string normalize_name(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  // so(m,n)/su(m,n)/sp(m,n) with m > n normalize to ascending order
  for (const char* fam : {"so(", "su(", "sp("}) {
    if (s.rfind(fam, 0) == 0 && s.back() == ')') {
      auto comma = s.find(',');
      if (comma == std::string::npos) break;
      std::string a = s.substr(3, comma - 3), c = s.substr(comma + 1, s.size() - comma - 2);
      if (a.find_first_not_of("0123456789") != std::string::npos) break;
      if (c.find_first_not_of("0123456789") != std::string::npos) break;
      int x = std::stoi(a), y = std::stoi(c);
      if (x > y) s = std::string(fam) + std::to_string(y) + "," + std::to_string(x) + ")";
      break;
    }
  }
  return s;
}

}  // namespace

const RealFormEntry* Catalog::find(const std::string& name) const {
  std::string s = normalize_name(name);
  auto exc = exclusions.find(s);
  if (exc != exclusions.end()) throw std::runtime_error(exc->second);
  auto al = aliases.find(s);
  if (al != aliases.end()) s = al->second;
  for (const auto& e : entries)
    if (e.name == s) return &e;
  return nullptr;
}

RestrictedRootData restricted_system(const RealFormEntry& entry) {
  const auto& rs = entry.restricted;
  RootSystem sys = build_root_system(rs.type, rs.rank);
  try {
    return make_restricted(sys, entry.dim_g, rs.single_mult, rs.short_mult, rs.long_mult,
                           rs.double_mult);
  } catch (const std::exception& e) {
    throw std::runtime_error("catalog entry " + entry.name + ": " + e.what());
  }
}

RestrictedRootData restricted_system(const Catalog& cat, const std::string& name) {
  const RealFormEntry* e = cat.find(name);
  if (!e) throw std::runtime_error("unknown real form: " + name);
  return restricted_system(*e);
}

std::vector<const RealFormEntry*> list_real_forms(const Catalog& cat,
                                                  const RealFormFilter& filter) {
  std::vector<const RealFormEntry*> out;
  for (const auto& e : cat.entries) {
    if (filter.family && e.family != *filter.family) continue;
    if (filter.rank && e.restricted.rank != *filter.rank) continue;
    out.push_back(&e);
  }
  return out;
}

void save_catalog(const Catalog& cat, const std::string& path) {
  json j;
  j["version"] = cat.version;
  j["max_rank"] = cat.max_rank;
  j["max_second"] = cat.max_second;
  j["entries"] = json::array();
  for (const auto& e : cat.entries) {
    json je;
    je["name"] = e.name;
    je["family"] = e.family;
    je["params"] = e.params;
    je["restricted"] = {{"type", e.restricted.type},
                        {"rank", e.restricted.rank},
                        {"single_mult", e.restricted.single_mult},
                        {"short_mult", e.restricted.short_mult},
                        {"long_mult", e.restricted.long_mult},
                        {"double_mult", e.restricted.double_mult}};
    je["dim_g"] = e.dim_g;
    je["n"] = e.n_g;
    je["d"] = e.d_g;
    je["expected"] = {{"v", e.expected_v}, {"r", e.expected_r}};
    je["footnotes"] = e.footnotes;
    j["entries"].push_back(std::move(je));
  }
  j["aliases"] = cat.aliases;
  j["exclusions"] = cat.exclusions;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write catalog: " + path);
  out << j.dump(1) << "\n";
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read catalog: " + path);
  json j = json::parse(in);
  Catalog cat;
  cat.version = j.at("version").get<int>();
  cat.max_rank = j.value("max_rank", 0);
  cat.max_second = j.value("max_second", 0);
  for (const auto& je : j.at("entries")) {
    RealFormEntry e;
    e.name = je.at("name").get<std::string>();
    e.family = je.at("family").get<std::string>();
    e.params = je.at("params").get<std::vector<int>>();
    const auto& r = je.at("restricted");
    e.restricted = {r.at("type").get<std::string>(), r.at("rank").get<int>(),
                    r.at("single_mult").get<int>(),  r.at("short_mult").get<int>(),
                    r.at("long_mult").get<int>(),    r.at("double_mult").get<int>()};
    e.dim_g = je.at("dim_g").get<int>();
    e.n_g = je.at("n").get<int>();
    e.d_g = je.at("d").get<int>();
    e.expected_v = je.at("expected").at("v").get<int>();
    e.expected_r = je.at("expected").at("r").get<int>();
    e.footnotes = je.value("footnotes", std::vector<std::string>{});
    cat.entries.push_back(std::move(e));
  }
  cat.aliases = j.value("aliases", std::map<std::string, std::string>{});
  cat.exclusions = j.value("exclusions", std::map<std::string, std::string>{});
  // double-entry check on load: every entry must pass the dimension
  // bookkeeping before anything downstream trusts it
  for (const auto& e : cat.entries) restricted_system(e);
  return cat;
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("ROOTREG_CATALOG")) return env;
#ifdef ROOTREG_DATA_DIR
  return std::string(ROOTREG_DATA_DIR) + "/catalog.json";
#else
  return "data/catalog.json";
#endif
}

Catalog load_default_catalog() { return load_catalog(default_catalog_path()); }

}  // namespace rootreg

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootreg/rootsystem.hpp"

namespace rootreg {

struct RestrictedSpec {
  std::string type;  // A, B, C, D, E6, E7, E8, F4, G2, BC
  int rank = 0;
  int single_mult = 0;  // simply-laced types
  int short_mult = 0;   // two-length types; BC: m(e_i)
  int long_mult = 0;    // two-length types; BC: m(e_i +- e_j)
  int double_mult = 0;  // BC: m(2 e_i)
};

struct RealFormEntry {
  std::string name;        // instantiated, e.g. "sl(3,R)", "so*(10)", "E_VII"
  std::string family;      // e.g. "sl(n,R)"
  std::vector<int> params;
  RestrictedSpec restricted;
  int dim_g = 0;
  int n_g = 0;        // curated: minimal dimension of a nontrivial representation column
  int d_g = 0;        // curated: minimal compact coset dimension column
  int expected_v = 0; // reference value for the minimal parabolic codimension
  int expected_r = 0; // reference value for the coarse-root count
  std::vector<std::string> footnotes;
};

struct Catalog {
  int version = 1;
  int max_rank = 0;
  int max_second = 0;
  std::vector<RealFormEntry> entries;
  std::map<std::string, std::string> aliases;     // isogeny renames, e.g. so(3,3) -> sl(4,R)
  std::map<std::string, std::string> exclusions;  // names rejected with a reason

  // Resolves aliases and normalized spellings; nullptr when unknown.
  // Throws std::runtime_error for excluded names (with the reason).
  const RealFormEntry* find(const std::string& name) const;
};

// Instantiate every catalog family with real rank <= max_rank; families
// with a second parameter (su(n,m), so(n,m), sp(2n,2m)) run it to
// max_second.
Catalog build_catalog(int max_rank = 8, int max_second = 10);

Catalog load_catalog(const std::string& path);
void save_catalog(const Catalog& cat, const std::string& path);

// ROOTREG_CATALOG env var when set, else the bundled data file.
std::string default_catalog_path();
Catalog load_default_catalog();

// Root data with the entry's curated multiplicities; validates the
// dimension bookkeeping and throws naming the entry on corruption.
RestrictedRootData restricted_system(const RealFormEntry& entry);
RestrictedRootData restricted_system(const Catalog& cat, const std::string& name);

struct RealFormFilter {
  std::optional<std::string> family;
  std::optional<int> rank;
};

std::vector<const RealFormEntry*> list_real_forms(const Catalog& cat,
                                                  const RealFormFilter& filter = {});

}  // namespace rootreg

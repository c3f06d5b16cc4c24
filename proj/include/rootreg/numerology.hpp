#pragma once

#include <string>
#include <vector>

#include "rootreg/catalog.hpp"

namespace rootreg {

struct NumerologyRow {
  std::string name;
  std::string restricted_type;  // e.g. "C_2", "(BC)_3"
  int real_rank = 0;
  int n = 0;  // curated
  int d = 0;  // curated
  int v = 0;  // computed: minimal parabolic codimension
  int r = 0;  // computed: min over maximal parabolics of the coarse-class count
  std::vector<int> v_argmin;  // 1-based simple-root indices achieving v
  std::vector<int> r_argmin;  // 1-based indices achieving r
  // true when every codim-v parabolic has the same coarse count; r equals
  // that common count in this case
  bool codim_v_counts_agree = true;
};

NumerologyRow numerology_row(const RealFormEntry& entry);

struct RowCheck {
  NumerologyRow row;
  int expected_v = 0, expected_r = 0;
  bool v_ok = false, r_ok = false;
  std::vector<std::string> footnotes;
};

struct ValidationReport {
  std::vector<RowCheck> rows;
  int mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

// Recompute v and r for every catalog entry with real rank <= max_rank and
// compare against the reference columns.  Failures are report entries, not
// exceptions.
ValidationReport validate_tables(const Catalog& cat, int max_rank = 8);

std::string rows_to_csv(const std::vector<NumerologyRow>& rows);
// {"columns": [...], "rows": [[name, type, rank, n, d, v, r], ...]}
std::string rows_to_json(const std::vector<NumerologyRow>& rows);
std::string report_to_json(const ValidationReport& report);
std::string report_to_text(const ValidationReport& report);

}  // namespace rootreg

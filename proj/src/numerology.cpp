#include "rootreg/numerology.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rootreg/parabolic.hpp"
#include "rootreg/regularity.hpp"

namespace rootreg {

namespace {

std::string pretty_type(const RestrictedSpec& rs) {
  if (rs.type == "BC") return "(BC)_" + std::to_string(rs.rank);
  if (rs.type.size() > 1) return rs.type;  // E6, E7, E8, F4, G2 carry the rank
  return rs.type + "_" + std::to_string(rs.rank);
}

}  // namespace

NumerologyRow numerology_row(const RealFormEntry& entry) {
  RestrictedRootData data = restricted_system(entry);
  NumerologyRow row;
  row.name = entry.name;
  row.restricted_type = pretty_type(entry.restricted);
  row.real_rank = data.real_rank;
  row.n = entry.n_g;
  row.d = entry.d_g;

  MinCodim mc = min_codim_v(data);
  row.v = mc.v;
  for (int i : mc.argmin) row.v_argmin.push_back(i + 1);

  // r: minimum coarse-class count over the maximal proper parabolics.  The
  // count is monotone under enlarging S, so singletons are exhaustive.
  int best = std::numeric_limits<int>::max();
  std::vector<int> counts(data.system.rank);
  for (int i = 0; i < data.system.rank; ++i) {
    Parabolic p = standard_parabolic(data, {i});
    counts[i] = coarse_count(p);
    if (counts[i] < best) {
      best = counts[i];
      row.r_argmin = {i + 1};
    } else if (counts[i] == best) {
      row.r_argmin.push_back(i + 1);
    }
  }
  row.r = best;

  int first = counts[mc.argmin.front()];
  row.codim_v_counts_agree =
      std::all_of(mc.argmin.begin(), mc.argmin.end(), [&](int i) { return counts[i] == first; });
  return row;
}

ValidationReport validate_tables(const Catalog& cat, int max_rank) {
  ValidationReport rep;
  for (const auto& e : cat.entries) {
    if (e.restricted.rank > max_rank) continue;
    RowCheck rc;
    rc.row = numerology_row(e);
    rc.expected_v = e.expected_v;
    rc.expected_r = e.expected_r;
    rc.v_ok = rc.row.v == e.expected_v;
    rc.r_ok = rc.row.r == e.expected_r;
    rc.footnotes = e.footnotes;
    if (!rc.v_ok || !rc.r_ok) ++rep.mismatches;
    rep.rows.push_back(std::move(rc));
  }
  return rep;
}

std::string rows_to_csv(const std::vector<NumerologyRow>& rows) {
  std::ostringstream out;
  out << "name,restricted root system,real rank,n,d,v,r\n";
  for (const auto& r : rows)
    out << r.name << "," << r.restricted_type << "," << r.real_rank << "," << r.n << ","
        << r.d << "," << r.v << "," << r.r << "\n";
  return out.str();
}

std::string rows_to_json(const std::vector<NumerologyRow>& rows) {
  nlohmann::json j;
  j["columns"] = {"name", "restricted root system", "real rank", "n", "d", "v", "r"};
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({r.name, r.restricted_type, r.real_rank, r.n, r.d, r.v, r.r});
  return j.dump(1);
}

std::string report_to_json(const ValidationReport& report) {
  nlohmann::json j;
  j["mismatches"] = report.mismatches;
  j["rows"] = nlohmann::json::array();
  for (const auto& rc : report.rows) {
    nlohmann::json jr;
    jr["name"] = rc.row.name;
    jr["restricted"] = rc.row.restricted_type;
    jr["real_rank"] = rc.row.real_rank;
    jr["n"] = rc.row.n;
    jr["d"] = rc.row.d;
    jr["v"] = {{"computed", rc.row.v}, {"expected", rc.expected_v}, {"ok", rc.v_ok}};
    jr["r"] = {{"computed", rc.row.r}, {"expected", rc.expected_r}, {"ok", rc.r_ok}};
    jr["v_argmin"] = rc.row.v_argmin;
    jr["r_argmin"] = rc.row.r_argmin;
    jr["codim_v_counts_agree"] = rc.row.codim_v_counts_agree;
    jr["provenance"] = {{"n", "curated"}, {"d", "curated"}, {"v", "computed"}, {"r", "computed"}};
    if (!rc.footnotes.empty()) jr["footnotes"] = rc.footnotes;
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(1);
}

std::string report_to_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& rc : report.rows) {
    out << (rc.v_ok && rc.r_ok ? "  ok   " : " FAIL  ") << rc.row.name << " ["
        << rc.row.restricted_type << ", rank " << rc.row.real_rank << "] n=" << rc.row.n
        << " d=" << rc.row.d << " v=" << rc.row.v << " r=" << rc.row.r;
    if (!rc.v_ok) out << "  (v expected " << rc.expected_v << ")";
    if (!rc.r_ok) out << "  (r expected " << rc.expected_r << ")";
    out << "\n";
  }
  out << report.rows.size() << " rows, " << report.mismatches << " mismatched\n";
  return out.str();
}

}  // namespace rootreg

// rootreg: restricted-root numerology, critical regularities, flag-chart
// identity fuzzing, and the contraction-dynamics demos, from one binary.

#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootreg/catalog.hpp"
#include "rootreg/conjugacy.hpp"
#include "rootreg/flagchart.hpp"
#include "rootreg/graphtransform.hpp"
#include "rootreg/numerology.hpp"
#include "rootreg/regularity.hpp"

namespace {

using namespace rootreg;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::set<int> parse_omit(const std::string& spec, int rank) {
  // comma-separated simple-root names a1..a<rank> (left-to-right enumeration)
  std::set<int> s;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.size() < 2 || tok[0] != 'a') throw CLI::ValidationError("--omit expects a1,a2,...");
    int idx = std::stoi(tok.substr(1));
    if (idx < 1 || idx > rank)
      throw CLI::ValidationError("--omit index out of range for rank " + std::to_string(rank));
    s.insert(idx - 1);
  }
  if (s.empty()) throw CLI::ValidationError("--omit must name at least one simple root");
  return s;
}

Catalog load_cat(const std::string& override_path) {
  if (!override_path.empty()) return load_catalog(override_path);
  return load_default_catalog();
}

int cmd_tables(int ranks, const std::string& format, const std::string& catalog_path) {
  Catalog cat = load_cat(catalog_path);
  if (catalog_path.empty() && ranks > cat.max_rank)
    cat = build_catalog(ranks, std::max(ranks + 2, cat.max_second));  // instantiate beyond the bundle
  ValidationReport rep = validate_tables(cat, ranks);
  if (format == "csv") {
    std::vector<NumerologyRow> rows;
    for (const auto& rc : rep.rows) rows.push_back(rc.row);
    std::cout << rows_to_csv(rows);
  } else if (format == "json") {
    std::vector<NumerologyRow> rows;
    for (const auto& rc : rep.rows) rows.push_back(rc.row);
    nlohmann::json j = nlohmann::json::parse(rows_to_json(rows));
    j["validation"] = nlohmann::json::parse(report_to_json(rep));
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << report_to_text(rep);
  }
  return rep.ok() ? kExitOk : kExitValidation;
}

int cmd_r0(const std::string& algebra, const std::string& omit, const std::string& format,
           const std::string& catalog_path) {
  Catalog cat = load_cat(catalog_path);
  RestrictedRootData data = restricted_system(cat, algebra);
  std::set<int> s = parse_omit(omit, data.system.rank);
  Parabolic p = standard_parabolic(data, s);
  RegularityResult res = r0(p);
  if (format == "json") {
    nlohmann::json j;
    j["algebra"] = algebra;
    j["value"] = to_string(res.value);
    j["codim"] = p.codim;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& c : res.witness.coords) w.push_back(to_string(c));
    j["witness"] = w;
    j["tight_pairs"] = res.tight_pairs.size();
    j["denominator_bound"] = res.denominator_bound.convert_to<std::string>();
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "r0 = " << to_string(res.value) << "  (codim " << p.codim << ", witness";
    for (const auto& c : res.witness.coords) std::cout << " " << to_string(c);
    std::cout << ", " << res.tight_pairs.size() << " tight pairs)\n";
  }
  return kExitOk;
}

int cmd_rmin(const std::string& algebra, const std::string& format,
             const std::string& catalog_path) {
  Catalog cat = load_cat(catalog_path);
  RestrictedRootData data = restricted_system(cat, algebra);
  Rational v = r_min(data);
  MinCodim mc = min_codim_v(data);
  std::vector<std::string> argmin_names;
  for (int i : mc.argmin) argmin_names.push_back("a" + std::to_string(i + 1));
  if (format == "json") {
    nlohmann::json j;
    j["algebra"] = algebra;
    j["r_min"] = to_string(v);
    j["v"] = mc.v;
    j["argmin"] = argmin_names;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "r_min = " << to_string(v) << "  (v = " << mc.v << ", at";
    for (const auto& s : argmin_names) std::cout << " " << s;
    std::cout << ")\n";
  }
  return kExitOk;
}

int cmd_charts(int n, const std::string& blocks_str, int samples, std::uint64_t seed,
               bool rational, const std::string& format) {
  std::vector<int> blocks;
  std::stringstream ss(blocks_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) blocks.push_back(std::stoi(tok));
  int total = 0;
  for (int b : blocks) total += b;
  if (total != n || blocks.empty())
    throw CLI::ValidationError("--blocks must be positive sizes summing to --n");
  IdentityReport rep;
  if (rational) {
    FlagChartContext<Rational> ctx(n, blocks);
    rep = check_tau_identities(ctx, samples, seed);
  } else {
    FlagChartContext<long double> ctx(n, blocks);
    rep = check_tau_identities(ctx, samples, seed);
  }
  if (format == "json") {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << "samples " << rep.samples << ", skipped " << rep.skipped << ", max residual "
              << rep.max_residual << ", violations " << rep.violations.size() << "\n";
  }
  return rep.violations.empty() ? kExitOk : kExitValidation;
}

int cmd_conjugacy(double s, int grid_nodes, double perturbation, const std::string& format) {
  LyapunovWeights w{{Rational(-1)}, {1}};
  std::vector<Rational> mult{Rational(1, 2)};
  Rational eps_r(static_cast<long>(perturbation * 1000000), 1000000);
  auto f = [eps_r](const std::vector<double>& x) {
    double e = to_double(eps_r);
    return std::vector<double>{x[0] / 2 + e * x[0] * x[0]};
  };
  int d = static_cast<int>(s);
  JetPolynomial fj = JetPolynomial::zero(w, w, std::max(2, d));
  fj.set(0, {1}, Rational(1, 2));
  fj.set(0, {2}, eps_r);
  ConjugacyResult res = build_conjugacy(mult, w, f, fj, s, grid_nodes);
  if (format == "json") {
    std::cout << res.to_json() << "\n";
  } else {
    std::cout << "kappa = " << res.kappa << ", residual_sup = " << res.residual_sup
              << ", |hhat - id| = " << res.sup_dist_id << ", |f - L| = " << res.f_dist_sup
              << ", iterations = " << res.tail_log.size() << "\n";
  }
  return kExitOk;
}

int cmd_graphtf(int samples, std::uint64_t seed, int steps, const std::string& format) {
  Rng rng(seed);
  double worst_lip = 0, worst_point = 0, worst_decay = 0;
  IterationLog last_log;
  for (int k = 0; k < samples; ++k) {
    int d1 = 1 + static_cast<int>(rng.below(2));
    int d2 = (d1 == 2) ? 1 : 1 + static_cast<int>(rng.below(2));
    double lambda = 0.35 + 0.2 * rng.unit();
    double eps = 0.05 + 0.1 * rng.unit();
    double delta = 0.3 * std::min(1.0 / (1 - eps), 0.5 * (1 - eps - lambda)) * (0.5 + 0.5 * rng.unit());
    double mu = 1.0 + 0.5 * rng.unit();
    HyperbolicBlockMap map = random_hyperbolic_map(d1, d2, lambda, eps, mu, delta, rng);

    double c1 = 0.35 + 0.3 * rng.unit();
    GraphFunction sigma = GraphFunction::sample(
        d1, d2, 1.0, 41,
        [&](const std::vector<double>& x) {
          std::vector<double> y(d2, 0.0);
          for (int i = 0; i < d2; ++i) y[i] = c1 * std::sin(x[i % d1]);
          return y;
        },
        c1);
    TransformStats st;
    GraphFunction g = graph_transform(map, sigma, &st);
    worst_lip = std::max(worst_lip, st.measured_lip / ((map.lambda + map.delta) / (1 - map.eps - map.delta)));
    PointwiseStats ps = pointwise_contract_check(map, sigma, g, 200, rng.bits());
    worst_point = std::max(worst_point, ps.max_ratio);

    if (k + 1 == samples) {
      double kappa = 1.0;
      double shrink = std::pow(map.mu + 2 * map.delta, -steps) *
                      std::pow(1 - map.eps - map.delta, steps);
      GraphFunction s1 = GraphFunction::sample(
          d1, d2, kappa * shrink * 0.99, 41,
          [&](const std::vector<double>& x) { return std::vector<double>(d2, 0.0 * x[0]); }, 0.0);
      GraphFunction s2 = GraphFunction::sample(
          d1, d2, kappa, 41,
          [&](const std::vector<double>& x) {
            std::vector<double> y(d2, 0.0);
            for (int i = 0; i < d2; ++i) y[i] = 0.8 * std::sin(x[i % d1]);
            return y;
          },
          0.8);
      std::vector<HyperbolicBlockMap> seq(steps, map);
      last_log = iterate_graph_transform(seq, s1, s2, steps, kappa);
      for (const auto& stp : last_log.steps)
        if (stp.step > 0)
          worst_decay = std::max(worst_decay, stp.ratio / (map.lambda + 2 * map.delta));
    }
  }
  if (format == "json") {
    nlohmann::json j;
    j["samples"] = samples;
    j["worst_lip_fraction"] = worst_lip;
    j["worst_pointwise_ratio"] = worst_point;
    j["worst_decay_fraction"] = worst_decay;
    j["last_iteration_log"] = nlohmann::json::parse(last_log.to_json());
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "lip fraction " << worst_lip << ", pointwise ratio " << worst_point
              << ", decay fraction " << worst_decay << "\n";
  }
  bool ok = worst_lip <= 1.05 && worst_point <= 1.05 && worst_decay <= 1.05;
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restricted-root numerology and contraction-dynamics toolkit"};
  app.require_subcommand(1);

  std::string catalog_path;
  app.add_option("--catalog", catalog_path,
                 "catalog JSON path (default: ROOTREG_CATALOG or the bundled file)");

  auto* tables = app.add_subcommand("tables", "recompute v and r for the whole catalog");
  int ranks = 8;
  std::string tformat = "text";
  tables->add_option("--ranks", ranks, "instantiate families up to this real rank");
  tables->add_option("--format", tformat)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* r0cmd = app.add_subcommand("r0", "critical regularity of one standard parabolic");
  std::string algebra, omit, r0format = "text";
  r0cmd->add_option("--algebra", algebra, "real form, e.g. sl(5,R)")->required();
  r0cmd->add_option("--omit", omit, "simple roots spanning S, e.g. a1,a3 (a1 = leftmost)")
      ->required();
  r0cmd->add_option("--format", r0format)->check(CLI::IsMember({"text", "json"}));

  auto* rmincmd = app.add_subcommand("rmin", "max of r0 over minimal-codimension parabolics");
  std::string rmin_algebra, rmin_format = "text";
  rmincmd->add_option("--algebra", rmin_algebra)->required();
  rmincmd->add_option("--format", rmin_format)->check(CLI::IsMember({"text", "json"}));

  auto* charts = app.add_subcommand("charts", "fuzz the flag-chart change-of-coordinate identities");
  int cn = 3, csamples = 1000;
  std::uint64_t cseed = 7;
  bool crational = false;
  std::string cblocks = "1,2", cformat = "text";
  charts->add_option("--n", cn, "matrix size");
  charts->add_option("--blocks", cblocks, "comma-separated block sizes");
  charts->add_option("--samples", csamples);
  charts->add_option("--seed", cseed);
  charts->add_flag("--rational", crational, "exact rational mode");
  charts->add_option("--format", cformat)->check(CLI::IsMember({"text", "json"}));

  auto* conj = app.add_subcommand("conjugacy", "1-d conjugacy construction demo");
  double cs = 2.0, cpert = 0.1;
  int cgrid = 2001;
  std::string conjformat = "text";
  conj->add_option("--s", cs, "regularity s = d + alpha");
  conj->add_option("--grid", cgrid, "nodes per axis on [-1,1]");
  conj->add_option("--perturbation", cpert, "quadratic coefficient of f");
  conj->add_option("--format", conjformat)->check(CLI::IsMember({"text", "json"}));

  auto* gtf = app.add_subcommand("graphtf", "random graph-transform verification run");
  int gsamples = 20, gsteps = 4;
  std::uint64_t gseed = 11;
  std::string gformat = "text";
  gtf->add_option("--samples", gsamples);
  gtf->add_option("--seed", gseed);
  gtf->add_option("--steps", gsteps);
  gtf->add_option("--format", gformat)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (tables->parsed()) return cmd_tables(ranks, tformat, catalog_path);
    if (r0cmd->parsed()) return cmd_r0(algebra, omit, r0format, catalog_path);
    if (rmincmd->parsed()) return cmd_rmin(rmin_algebra, rmin_format, catalog_path);
    if (charts->parsed()) return cmd_charts(cn, cblocks, csamples, cseed, crational, cformat);
    if (conj->parsed()) return cmd_conjugacy(cs, cgrid, cpert, conjformat);
    if (gtf->parsed()) return cmd_graphtf(gsamples, gseed, gsteps, gformat);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

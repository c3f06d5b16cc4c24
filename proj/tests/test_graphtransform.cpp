#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rootreg/graphtransform.hpp"

using namespace rootreg;

namespace {

HyperbolicBlockMap linear_map_11(double a1, double a2, double mu) {
  HyperbolicBlockMap m;
  m.d1 = 1;
  m.d2 = 1;
  m.a1 = Matrix<double>(1, 1);
  m.a1(0, 0) = a1;
  m.a2 = Matrix<double>(1, 1);
  m.a2(0, 0) = a2;
  m.lambda = std::fabs(a2);
  m.eps = 1 - std::fabs(a1) < 0 ? 0.05 : 1 - std::fabs(a1) + 0.05;
  m.mu = mu;
  m.delta = 0.0;
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("linear map fixes the zero section") {
  HyperbolicBlockMap m = linear_map_11(1.0, 0.5, 1.0);
  GraphFunction zero = GraphFunction::sample(
      1, 1, 1.0, 201, [](const std::vector<double>& x) { return std::vector<double>{0.0 * x[0]}; },
      0.0);
  GraphFunction g = graph_transform(m, zero);
  for (size_t k = 0; k < g.grid.node_count(); ++k)
    if (g.grid.node_valid(k)) CHECK(std::fabs(g.grid.node_value(k)[0]) <= 1e-12);
}

TEST_CASE("linear sigma transforms by the closed form c -> c * a2 / a1") {
  HyperbolicBlockMap m = linear_map_11(1.0, 0.5, 1.0);
  for (double c : {0.3, -0.8, 1.0}) {
    GraphFunction s = GraphFunction::sample(
        1, 1, 1.0, 201,
        [c](const std::vector<double>& x) { return std::vector<double>{c * x[0]}; },
        std::fabs(c));
    GraphFunction g = graph_transform(m, s);
    for (size_t k = 0; k < g.grid.node_count(); ++k) {
      if (!g.grid.node_valid(k)) continue;
      double x = g.grid.node_point(k)[0];
      CHECK(g.grid.node_value(k)[0] == doctest::Approx(0.5 * c * x).epsilon(1e-9));
    }
  }
}

TEST_CASE("transform respects the Lipschitz bound and fixes 0") {
  Rng rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    double lambda = 0.4, eps = 0.1, mu = 1.3;
    double delta = 0.05;
    HyperbolicBlockMap m = random_hyperbolic_map(1, 2, lambda, eps, mu, delta, rng);
    REQUIRE(m.contraction_hypotheses());
    double c = 0.5;
    GraphFunction s = GraphFunction::sample(
        1, 2, 1.0, 161,
        [c](const std::vector<double>& x) {
          return std::vector<double>{c * std::sin(x[0]), -c * x[0] / 2};
        },
        c);
    TransformStats st;
    GraphFunction g = graph_transform(m, s, &st);
    double bound = (lambda + delta) / (1 - eps - delta);
    CHECK(st.measured_lip <= bound * 1.05);
    CHECK(st.measured_lip_ginv <= 1.05 / (1 - eps - delta));
    CHECK(st.inversion_failures == 0);
    auto at0 = g.grid.eval({0.0});
    REQUIRE(at0.has_value());
    CHECK(std::fabs((*at0)[0]) <= 1e-10);
    CHECK(std::fabs((*at0)[1]) <= 1e-10);
  }
}

TEST_CASE("pointwise contraction estimate holds on samples") {
  Rng rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    HyperbolicBlockMap m = random_hyperbolic_map(2, 1, 0.45, 0.08, 1.2, 0.04, rng);
    GraphFunction s = GraphFunction::sample(
        2, 1, 1.0, 81,
        [](const std::vector<double>& x) {
          return std::vector<double>{0.4 * std::sin(x[0] + 0.5 * x[1])};
        },
        0.6);
    GraphFunction g = graph_transform(m, s);
    PointwiseStats ps = pointwise_contract_check(m, s, g, 500, rng.bits());
    CHECK(ps.max_ratio <= 1.05);
    CHECK(ps.samples - ps.skipped > 100);
  }
}

TEST_CASE("domain bounds: linear case is sharp, nonlinear case verified, inflated kappa flagged") {
  HyperbolicBlockMap lin = linear_map_11(1.1, 0.5, 1.1);
  GraphFunction zero = GraphFunction::sample(
      1, 1, 1.0, 201, [](const std::vector<double>& x) { return std::vector<double>{0.0 * x[0]}; },
      0.0);
  DomainBoundsReport rep = domain_bounds_check(lin, zero, 1.0, 1.0, 2000, 5);
  CHECK(rep.ok());

  Rng rng(4321);
  HyperbolicBlockMap m = random_hyperbolic_map(1, 1, 0.5, 0.1, 1.25, 0.05, rng);
  GraphFunction s = GraphFunction::sample(
      1, 1, 1.0, 161,
      [](const std::vector<double>& x) { return std::vector<double>{0.7 * std::sin(x[0])}; },
      0.7);
  DomainBoundsReport rep2 = domain_bounds_check(m, s, 1.0, 1.0, 10000, 6);
  CHECK(rep2.ok());

  // deliberately inflated inner radius: claims a ball the image cannot cover
  DomainBoundsReport rep3 = domain_bounds_check(m, s, 2.5, 1.0, 2000, 7);
  CHECK_FALSE(rep3.inner_violations.empty());
}

TEST_CASE("iterated transform: equal graphs stay at distance zero") {
  Rng rng(99);
  HyperbolicBlockMap m = random_hyperbolic_map(1, 1, 0.5, 0.1, 1.2, 0.03, rng);
  int steps = 3;
  double shrink = std::pow(m.mu + 2 * m.delta, -steps) * std::pow(1 - m.eps - m.delta, steps);
  // linear sigma: grid interpolation is exact, so the distances vanish
  auto sg = [](const std::vector<double>& x) { return std::vector<double>{0.5 * x[0]}; };
  GraphFunction s1 = GraphFunction::sample(1, 1, 0.99 * shrink, 101, sg, 0.5);
  GraphFunction s2 = GraphFunction::sample(1, 1, 1.0, 101, sg, 0.5);
  IterationLog log = iterate_graph_transform({m, m, m}, s1, s2, steps, 1.0);
  CHECK(log.collapsed_at == -1);
  for (const auto& st : log.steps) CHECK(st.distance <= 1e-10);
}

TEST_CASE("iterated transform: linear diag(1, 1/2) halves the distance each step") {
  HyperbolicBlockMap m = linear_map_11(1.0, 0.5, 1.0);
  int steps = 4;
  double shrink = std::pow(m.mu + 2 * m.delta, -steps) * std::pow(1 - m.eps - m.delta, steps);
  GraphFunction s1 = GraphFunction::sample(
      1, 1, 0.99 * shrink, 401,
      [](const std::vector<double>& x) { return std::vector<double>{0.0 * x[0]}; }, 0.0);
  GraphFunction s2 = GraphFunction::sample(
      1, 1, 1.0, 401, [](const std::vector<double>& x) { return std::vector<double>{x[0]}; }, 1.0);
  IterationLog log = iterate_graph_transform({m, m, m, m}, s1, s2, steps, 1.0);
  REQUIRE(log.collapsed_at == -1);
  REQUIRE(log.steps.size() == static_cast<size_t>(steps) + 1);
  for (int k = 1; k <= steps; ++k)
    CHECK(log.steps[k].ratio == doctest::Approx(0.5).epsilon(0.02));
  std::string json = log.to_json();
  CHECK(json.find("domain_radius") != std::string::npos);
}

TEST_CASE("iterated transform: random sequences obey the (lambda + 2 delta)^n decay") {
  Rng rng(2025);
  for (int trial = 0; trial < 5; ++trial) {
    double lambda = 0.45, eps = 0.1, delta = 0.04, mu = 1.15;
    int steps = 4;
    std::vector<HyperbolicBlockMap> seq;
    for (int k = 0; k < steps; ++k)
      seq.push_back(random_hyperbolic_map(1, 1, lambda, eps, mu, delta, rng));
    double shrink = std::pow(mu + 2 * delta, -steps) * std::pow(1 - eps - delta, steps);
    GraphFunction s1 = GraphFunction::sample(
        1, 1, 0.99 * shrink, 201,
        [](const std::vector<double>& x) { return std::vector<double>{0.3 * std::sin(x[0])}; },
        0.3);
    GraphFunction s2 = GraphFunction::sample(
        1, 1, 1.0, 201,
        [](const std::vector<double>& x) { return std::vector<double>{0.9 * x[0]}; }, 0.9);
    IterationLog log = iterate_graph_transform(seq, s1, s2, steps, 1.0);
    REQUIRE(log.collapsed_at == -1);
    double rate = lambda + 2 * delta;
    for (int k = 1; k < static_cast<int>(log.steps.size()); ++k)
      if (log.steps[k - 1].distance > 1e-9)
        CHECK(log.steps[k].distance <=
              rate * log.steps[k - 1].distance * 1.05 + 1e-7);
  }
}

TEST_CASE("hypothesis violations are rejected") {
  Rng rng(1);
  HyperbolicBlockMap m = random_hyperbolic_map(1, 1, 0.5, 0.1, 1.2, 0.03, rng);
  m.delta = 0.5;  // breaks delta < (1 - eps - lambda)/2
  GraphFunction s = GraphFunction::sample(
      1, 1, 1.0, 101, [](const std::vector<double>& x) { return std::vector<double>{0.0 * x[0]}; },
      0.0);
  CHECK_THROWS_AS(graph_transform(m, s), std::invalid_argument);
}

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rootreg/conjugacy.hpp"

using namespace rootreg;

namespace {

LyapunovWeights w1() { return {{Rational(-1)}, {1}}; }

JetPolynomial quadratic_f(const Rational& eps, int degree = 2) {
  JetPolynomial f = JetPolynomial::zero(w1(), w1(), degree);
  f.set(0, {1}, Rational(1, 2));
  f.set(0, {2}, eps);
  return f;
}

}  // namespace

TEST_CASE("jet conjugacy: f = L gives the identity") {
  JetPolynomial l = JetPolynomial::zero(w1(), w1(), 3);
  l.set(0, {1}, Rational(1, 2));
  JetConjugacy jc = solve_jet_conjugacy({Rational(1, 2)}, w1(), l, 3);
  CHECK(jc.exact);
  CHECK(jc.h == JetPolynomial::identity(w1(), 3));
}

TEST_CASE("jet conjugacy: 1-dim quadratic gives H2 = eps/(mu - mu^2) = 2/5") {
  JetConjugacy jc = solve_jet_conjugacy({Rational(1, 2)}, w1(), quadratic_f(Rational(1, 10)), 2);
  CHECK(jc.exact);
  CHECK(jc.h.get(0, {2}) == Rational(2, 5));
  // composition oracle: H . f = L . H through degree 2
  JetPolynomial l = JetPolynomial::zero(w1(), w1(), 2);
  l.set(0, {1}, Rational(1, 2));
  CHECK(jet_compose(jc.h, quadratic_f(Rational(1, 10))) == jet_compose(l, jc.h));
  // equivalently jet_invert(H) . L . H = f
  CHECK(jet_compose(jet_invert(jc.h), jet_compose(l, jc.h)) == quadratic_f(Rational(1, 10)));
}

TEST_CASE("resonant 2-dim case: the x2^2 obstruction lands in the residue") {
  LyapunovWeights w{{Rational(-2), Rational(-1)}, {1, 1}};
  std::vector<Rational> mult{Rational(1, 4), Rational(1, 2)};  // exp(-2 log 2), exp(-log 2)
  JetPolynomial f = JetPolynomial::zero(w, w, 2);
  f.set(0, {1, 0}, Rational(1, 4));
  f.set(1, {0, 1}, Rational(1, 2));
  f.set(0, {0, 2}, Rational(3, 7));  // resonant: mu_1 = mu_2^2

  CHECK_THROWS_AS(solve_jet_conjugacy(mult, w, f, 2, /*strict=*/true), std::runtime_error);

  JetConjugacy jc = solve_jet_conjugacy(mult, w, f, 2, /*strict=*/false);
  CHECK_FALSE(jc.exact);
  CHECK(jc.first_obstructed_degree == 2);
  CHECK(jc.residue.get(0, {0, 2}) == Rational(3, 7));
  // verification against the resonant normal form: H . f = (L + N) . H
  JetPolynomial normal = JetPolynomial::zero(w, w, 2);
  normal.set(0, {1, 0}, Rational(1, 4));
  normal.set(1, {0, 1}, Rational(1, 2));
  normal.set(0, {0, 2}, Rational(3, 7));
  CHECK(jet_compose(jc.h, f) == jet_compose(normal, jc.h));
}

TEST_CASE("nonresonant 2-dim case solves exactly") {
  LyapunovWeights w{{Rational(-2), Rational(-1)}, {1, 1}};
  std::vector<Rational> mult{Rational(1, 5), Rational(1, 2)};  // 1/5 != (1/2)^2
  JetPolynomial f = JetPolynomial::zero(w, w, 2);
  f.set(0, {1, 0}, Rational(1, 5));
  f.set(1, {0, 1}, Rational(1, 2));
  f.set(0, {0, 2}, Rational(3, 7));
  f.set(1, {1, 0}, Rational(0));
  JetConjugacy jc = solve_jet_conjugacy(mult, w, f, 2);
  CHECK(jc.exact);
  CHECK(jc.h.get(0, {0, 2}) == Rational(3, 7) / (Rational(1, 5) - Rational(1, 4)));
}

TEST_CASE("tail fixed point: R0 = 0 gives R = 0 immediately") {
  GridFn r0(1, 1, 1.0, 101);
  auto f = [](const std::vector<double>& x) { return std::vector<double>{x[0] / 2}; };
  TailResult res = tail_fixed_point({Rational(1, 2)}, f, r0, 2, 0.0, 0.01);
  CHECK(res.iterations <= 2);
  for (size_t k = 0; k < res.tail.node_count(); ++k)
    CHECK(res.tail.node_value(k)[0] == 0.0);
}

TEST_CASE("kappa >= 1 parameter sets are rejected before iterating") {
  GridFn r0(1, 1, 1.0, 101);
  auto f = [](const std::vector<double>& x) { return std::vector<double>{x[0] / 2}; };
  // s = 1 + 0: kappa = exp(log 2 - log 2 + ...) = exp(3 eps) > 1
  CHECK_THROWS_AS(tail_fixed_point({Rational(1, 2)}, f, r0, 1, 0.0, 0.01),
                  std::invalid_argument);
}

TEST_CASE("full 1-dim conjugacy: residual, contraction ratio, identity distance") {
  std::vector<Rational> mult{Rational(1, 2)};
  auto f = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] / 2 + x[0] * x[0] / 10};
  };
  ConjugacyResult res = build_conjugacy(mult, w1(), f, quadratic_f(Rational(1, 10)), 2.0, 1001);
  CHECK(res.kappa < 1.0);
  CHECK(res.kappa == doctest::Approx(0.5 * std::exp(4 * res.epsilon)).epsilon(1e-12));
  CHECK(res.residual_sup <= 1e-8);
  CHECK(res.hbar.get(0, {2}) == Rational(2, 5));
  // measured per-step contraction ratio stays under kappa (plus slack)
  for (const auto& step : res.tail_log)
    if (step.step >= 2 && step.distance > 1e-9) CHECK(step.ratio <= res.kappa * 1.01);
  CHECK(res.sup_dist_id > 0);
  CHECK(res.sup_dist_id < 1.0);

  std::string json = res.to_json();
  CHECK(json.find("residual_sup") != std::string::npos);
}

TEST_CASE("f = L: hhat is the identity with zero residual") {
  std::vector<Rational> mult{Rational(1, 2)};
  auto f = [](const std::vector<double>& x) { return std::vector<double>{x[0] / 2}; };
  JetPolynomial l = JetPolynomial::zero(w1(), w1(), 2);
  l.set(0, {1}, Rational(1, 2));
  ConjugacyResult res = build_conjugacy(mult, w1(), f, l, 2.0, 501);
  CHECK(res.residual_sup <= 1e-13);
  CHECK(res.sup_dist_id <= 1e-13);
}

TEST_CASE("2-dim conjugacy: nonresonant diagonal contraction end to end") {
  // L = diag(1/10, 1/2): no multiplier products collide through degree 4
  LyapunovWeights w{{Rational(-332, 100), Rational(-1)}, {1, 1}};
  std::vector<Rational> mult{Rational(1, 10), Rational(1, 2)};
  auto f = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] / 10 + 0.02 * x[1] * x[1], x[1] / 2 + 0.02 * x[0] * x[1]};
  };
  JetPolynomial fj = JetPolynomial::zero(w, w, 4);
  fj.set(0, {1, 0}, Rational(1, 10));
  fj.set(1, {0, 1}, Rational(1, 2));
  fj.set(0, {0, 2}, Rational(1, 50));
  fj.set(1, {1, 1}, Rational(1, 50));
  ConjugacyResult res =
      build_conjugacy(mult, w, f, fj, 4.0, 161, -1, 0.25, /*exact_polynomial_f=*/true);
  CHECK(res.kappa < 1.0);
  CHECK(res.residual_sup <= 1e-8);
  CHECK(res.sup_dist_id < 0.6);
  for (const auto& step : res.tail_log)
    if (step.step >= 2 && step.distance > 1e-9) CHECK(step.ratio <= res.kappa * 1.05);
}

TEST_CASE("residual decreases under grid refinement") {
  std::vector<Rational> mult{Rational(1, 2)};
  auto f = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] / 2 + x[0] * x[0] / 10};
  };
  ConjugacyResult coarse = build_conjugacy(mult, w1(), f, quadratic_f(Rational(1, 10)), 2.0, 251);
  ConjugacyResult fine = build_conjugacy(mult, w1(), f, quadratic_f(Rational(1, 10)), 2.0, 2001);
  CHECK(fine.residual_sup <= coarse.residual_sup * 1.000001);
}

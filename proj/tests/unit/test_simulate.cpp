// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/simulate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace relbelief;

namespace {

SimConfig config(double beta, std::uint64_t reps, unsigned threads = 1) {
  SimConfig cfg;
  cfg.beta = beta;
  cfg.reps = reps;
  cfg.seed = 20261017;
  cfg.threads = threads;
  return cfg;
}

bool within(double mc, double exact, double se, double k = 4.0) { return std::abs(mc - exact) <= k * se; }

// Draws the whole generative process, epsilon then all n + 1 labels, and keeps
// the replications whose new label is c. The tallies estimate the risks given
// c under the joint law.
struct RejectionRisks {
  double map[2] = {0, 0};
  double lrse[2] = {0, 0};
  std::uint64_t kept[2] = {0, 0};
};

RejectionRisks rejection_sample(double alpha, double beta, double mu, int n, std::uint64_t draws,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> ga(alpha, 1.0), gb(beta, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  RejectionRisks out;
  std::uint64_t wrong_map[2] = {0, 0}, wrong_lrse[2] = {0, 0};
  for (std::uint64_t r = 0; r < draws; ++r) {
    const double u = ga(rng), v = gb(rng);
    const double eps = u / (u + v);
    int k = 0;
    for (int i = 0; i < n; ++i) k += unit(rng) < eps;
    const int c = unit(rng) < eps;
    const double x = c * mu + z(rng);
    const double p1 = (alpha + k) / (alpha + beta + n);
    const double prior1 = alpha / (alpha + beta);
    const double lr = mu * x - 0.5 * mu * mu;
    const int d_map = lr >= std::log((1 - p1) / p1);
    const int d_lrse = lr >= std::log((1 - p1) / p1 * prior1 / (1 - prior1));
    ++out.kept[c];
    wrong_map[c] += d_map != c;
    wrong_lrse[c] += d_lrse != c;
  }
  for (int c = 0; c < 2; ++c) {
    out.map[c] = double(wrong_map[c]) / double(out.kept[c]);
    out.lrse[c] = double(wrong_lrse[c]) / double(out.kept[c]);
  }
  return out;
}

}  // namespace

TEST_CASE("counts do not depend on the thread count") {
  for (double beta : {1.0, 14.0}) {
    const SimCounts one = simulate_counts(config(beta, 20000, 1));
    const SimCounts four = simulate_counts(config(beta, 20000, 4));
    const SimCounts odd = simulate_counts(config(beta, 20000, 7));
    for (int c = 0; c < 2; ++c) {
      CHECK(one.map_errors[c] == four.map_errors[c]);
      CHECK(one.lrse_errors[c] == four.lrse_errors[c]);
      CHECK(one.map_errors[c] == odd.map_errors[c]);
      CHECK(one.lrse_errors[c] == odd.lrse_errors[c]);
    }
  }
}

TEST_CASE("same seed, same counts; new seed, new counts") {
  const SimCounts a = simulate_counts(config(14.0, 5000));
  const SimCounts b = simulate_counts(config(14.0, 5000));
  CHECK(a.map_errors[0] == b.map_errors[0]);
  CHECK(a.lrse_errors[1] == b.lrse_errors[1]);
  auto cfg = config(14.0, 5000);
  cfg.seed += 1;
  const SimCounts c = simulate_counts(cfg);
  CHECK((a.map_errors[0] != c.map_errors[0] || a.map_errors[1] != c.map_errors[1] ||
         a.lrse_errors[0] != c.lrse_errors[0]));
}

TEST_CASE("Monte Carlo risks match exact enumeration") {
  for (bool conditional : {false, true}) {
    for (double beta : {1.0, 14.0, 32.0, 100.0}) {
      auto cfg = config(beta, 100000, 4);
      cfg.protocol = conditional ? SimProtocol::ConjugateConditional : SimProtocol::PriorDrawn;
      const auto risks = conditional_risk_mc(cfg);
      const auto exact = rbtest::classification_exact(1.0, beta, 1.0, 10, conditional);
      CHECK(within(risks[0].m0, exact.map0, risks[0].se0));
      CHECK(within(risks[0].m1, exact.map1, risks[0].se1));
      CHECK(within(risks[1].m0, exact.lrse0, risks[1].se0));
      CHECK(within(risks[1].m1, exact.lrse1, risks[1].se1));
    }
  }
}

TEST_CASE("the conditional protocol reproduces rejection sampling of the joint law") {
  for (double beta : {1.0, 14.0}) {
    const auto rej = rejection_sample(1.0, beta, 1.0, 10, 400000, 11);
    const auto exact = rbtest::classification_exact(1.0, beta, 1.0, 10, true);
    for (int c = 0; c < 2; ++c) {
      const double n = double(rej.kept[c]);
      const double m = c == 0 ? exact.map0 : exact.map1;
      const double l = c == 0 ? exact.lrse0 : exact.lrse1;
      CHECK(within(rej.map[c], m, std::sqrt(m * (1 - m) / n) + 1e-9));
      CHECK(within(rej.lrse[c], l, std::sqrt(l * (1 - l) / n) + 1e-9));
    }
  }
}

TEST_CASE("uninformative features give complementary errors") {
  auto cfg = config(14.0, 50000, 2);
  cfg.mu = 0.0;
  const auto risks = conditional_risk_mc(cfg);
  for (const auto& r : risks) CHECK(within(r.sum, 1.0, r.se_sum));
  const auto exact = rbtest::classification_exact(1.0, 14.0, 0.0, 10, false);
  CHECK(exact.map0 + exact.map1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.lrse0 + exact.lrse1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("standard errors stay positive at the extremes") {
  auto cfg = config(1.0, 1);
  const auto risks = conditional_risk_mc(cfg);
  for (const auto& r : risks) {
    CHECK(r.se0 == doctest::Approx(std::sqrt(2.0) / 3.0));
    CHECK(r.se_sum == doctest::Approx(std::hypot(r.se0, r.se1)));
  }
  SimCounts zero;
  zero.reps = 1000;
  const auto r = method_risk(zero, RuleKind::Map);
  CHECK(r.sum == 0.0);
  CHECK(r.se0 > 0.0);
}

TEST_CASE("exact risks: LRSE sums fall and MAP sums rise with beta") {
  double prev_map = 0.0, prev_lrse = 2.0;
  for (double beta : {1.0, 14.0, 32.0, 100.0}) {
    const auto e = rbtest::classification_exact(1.0, beta, 1.0, 10, false);
    const double map_sum = e.map0 + e.map1;
    const double lrse_sum = e.lrse0 + e.lrse1;
    CHECK(map_sum > prev_map);
    CHECK(lrse_sum < prev_lrse);
    CHECK(lrse_sum <= map_sum + 1e-12);
    prev_map = map_sum;
    prev_lrse = lrse_sum;
  }
  const auto one = rbtest::classification_exact(1.0, 1.0, 1.0, 10, false);
  CHECK(one.map0 + one.map1 == doctest::Approx(0.7773).epsilon(1e-3));
  CHECK(one.map0 == doctest::Approx(one.lrse0).epsilon(1e-14));
}

TEST_CASE("configuration errors") {
  auto cfg = config(1.0, 0);
  CHECK_THROWS_AS(simulate_counts(cfg), Error);
  cfg = config(-1.0, 10);
  CHECK_THROWS_AS(simulate_counts(cfg), Error);
  CHECK(parse_protocol("conditional") == SimProtocol::ConjugateConditional);
  CHECK_THROWS_AS(parse_protocol("posterior"), Error);
}

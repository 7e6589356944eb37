// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "core/error.hpp"
#include "core/estimators.hpp"
#include "core/losses.hpp"
#include "core/model.hpp"
#include "core/numeric.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace relbelief;

namespace {

BeliefTables three_point() {
  return tables_from_marginals(std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{0.4, 0.3, 0.3});
}

}  // namespace

TEST_CASE("loss strings parse and describe") {
  CHECK(std::holds_alternative<ZeroOne>(parse_loss("zero-one")));
  CHECK(std::holds_alternative<PriorBased>(parse_loss("prior-based")));
  CHECK(std::get<CappedPriorBased>(parse_loss("capped:0.05")).eta == 0.05);
  CHECK(std::get<BallIndicator>(parse_loss("ball:0.5")).lambda == 0.5);
  const auto d = std::get<DiscretizedCapped>(parse_loss("discretized:0.1:0.02"));
  CHECK(d.lambda == 0.1);
  CHECK(d.eta == 0.02);
  CHECK(describe(parse_loss("capped:0.05")) == "capped:0.05");
  CHECK_THROWS_AS(parse_loss("capped:-1"), Error);
  CHECK_THROWS_AS(parse_loss("capped:abc"), Error);
  CHECK_THROWS_AS(parse_loss("quadratic"), Error);
  CHECK_THROWS_AS(parse_loss("discretized:0.1"), Error);

  const std::string path = "weights_test.txt";
  {
    std::ofstream f(path);
    f << "1, 2.5\n0\n";
  }
  CHECK(std::get<WeightedIndicator>(parse_loss("weighted:" + path)).h == std::vector<double>{1.0, 2.5, 0.0});
  std::remove(path.c_str());
}

TEST_CASE("posterior risks from the tables") {
  const auto t = three_point();
  CHECK(posterior_risk(ZeroOne{}, 0, t) == doctest::Approx(0.6));
  // rb = (2, 1, 0.6)
  CHECK(posterior_risk(PriorBased{}, 0, t) == doctest::Approx(1.6));
  CHECK(posterior_risk(PriorBased{}, 2, t) == doctest::Approx(3.0));
  // capped at 0.25: 0.3/0.3 + 0.3/0.5 when deciding psi 0
  CHECK(posterior_risk(CappedPriorBased{0.25}, 0, t) == doctest::Approx(1.6));
  // prior 0.2 is below the cap: 0.4/0.25 + 0.3/0.5
  CHECK(posterior_risk(CappedPriorBased{0.25}, 1, t) == doctest::Approx(2.2));
  CHECK(posterior_risk(WeightedIndicator{{1.0, 0.0, 2.0}}, 1, t) == doctest::Approx(1.0));
  CHECK_THROWS_AS(posterior_risk(ZeroOne{}, 3, t), Error);
}

TEST_CASE("ball loss uses a closed ball") {
  auto t = tables_from_marginals(std::vector<double>{0.25, 0.25, 0.25, 0.25},
                                 std::vector<double>{0.1, 0.2, 0.3, 0.4},
                                 {{"a", {0.0}}, {"b", {1.0}}, {"c", {2.0}}, {"d", {3.0}}});
  CHECK(posterior_risk(BallIndicator{1.0}, 1, t) == doctest::Approx(0.4));
  CHECK(posterior_risk(BallIndicator{0.5}, 1, t) == doctest::Approx(0.8));
  auto bare = three_point();
  CHECK_THROWS_AS(posterior_risk(BallIndicator{1.0}, 0, bare), Error);
}

TEST_CASE("prior-based risk equals #Psi minus expected rb at the decision") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const FiniteModel m = rbtest::random_model(seed);
    for (RuleKind kind : {RuleKind::Lrse, RuleKind::Map}) {
      const auto rule = tabulate_rule(kind, m);
      const RiskReport r = prior_risk(PriorBased{}, rule, m);
      CHECK(r.identity_residual <= 1e-10 * std::max(1.0, r.prior_risk));
    }
  }
}

TEST_CASE("prior-weighted error sum is the zero-one risk") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const FiniteModel m = rbtest::random_model(seed);
    const auto rule = tabulate_rule(RuleKind::Map, m);
    const RiskReport r = prior_risk(ZeroOne{}, rule, m);
    CHECK(std::abs(r.prior_weighted_sum - r.prior_risk) <= 1e-12);
    // Under the prior-based loss the risk is the unweighted error sum.
    const RiskReport p = prior_risk(PriorBased{}, rule, m);
    CHECK(std::abs(p.unweighted_sum - p.prior_risk) <= 1e-10 * std::max(1.0, p.prior_risk));
  }
}

TEST_CASE("the LRSE minimizes prior risk under the prior-based loss") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const FiniteModel m = rbtest::random_model(seed);
    const double lrse_risk = prior_risk(PriorBased{}, tabulate_rule(RuleKind::Lrse, m), m).prior_risk;
    const double map_risk = prior_risk(PriorBased{}, tabulate_rule(RuleKind::Map, m), m).prior_risk;
    CHECK(lrse_risk <= map_risk + 1e-10);
    const double map01 = prior_risk(ZeroOne{}, tabulate_rule(RuleKind::Map, m), m).prior_risk;
    const double lrse01 = prior_risk(ZeroOne{}, tabulate_rule(RuleKind::Lrse, m), m).prior_risk;
    CHECK(map01 <= lrse01 + 1e-12);
  }
}

TEST_CASE("worker count does not change the risk report") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const FiniteModel m = rbtest::random_model(seed);
    const auto rule = tabulate_rule(RuleKind::Lrse, m);
    const RiskReport a = prior_risk(PriorBased{}, rule, m, 1);
    const RiskReport b = prior_risk(PriorBased{}, rule, m, 4);
    CHECK(std::abs(a.prior_risk - b.prior_risk) <= 1e-13 * std::max(1.0, a.prior_risk));
    for (std::size_t j = 0; j < a.per_class_error.size(); ++j) {
      CHECK(std::abs(a.per_class_error[j] - b.per_class_error[j]) <= 1e-14);
    }
  }
}

TEST_CASE("prior risk rejects partial rules and unknown psi") {
  const FiniteModel m = rbtest::random_model(3);
  CHECK_THROWS_AS(prior_risk(ZeroOne{}, DecisionRule{}, m), Error);
  DecisionRule bad(m.x_count(), m.psi_count());
  CHECK_THROWS_AS(prior_risk(ZeroOne{}, bad, m), Error);
}

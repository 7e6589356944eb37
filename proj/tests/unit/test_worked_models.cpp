// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "core/error.hpp"
#include "core/estimators.hpp"
#include "core/worked_models.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace relbelief;

namespace {

GaussianRegression scalar_regression(double y, double tau2 = 1.0) {
  GaussianRegression m;
  m.X = Eigen::MatrixXd::Ones(1, 1);
  m.y = Eigen::VectorXd::Constant(1, y);
  m.w = Eigen::VectorXd::Ones(1);
  m.sigma2 = 1.0;
  m.tau2 = tau2;
  return m;
}

}  // namespace

TEST_CASE("rare-class classifier decisions") {
  const BinomialClassifier m{0.05, 0.80, 0.05};
  CHECK(classify(m, 1, RuleKind::Lrse).psi_index == 1);
  CHECK(classify(m, 1, RuleKind::Map).psi_index == 0);
  CHECK(classify(m, 0, RuleKind::Lrse).psi_index == 0);
  // MAP switches to psi2 at x = 1 once epsilon passes psi1 / (psi1 + psi2)
  const double cut = 0.05 / 0.85;
  CHECK(classify({0.05, 0.80, cut * 0.999}, 1, RuleKind::Map).psi_index == 0);
  CHECK(classify({0.05, 0.80, cut * 1.001}, 1, RuleKind::Map).psi_index == 1);
  CHECK(cut == doctest::Approx(0.0588).epsilon(1e-3));
}

TEST_CASE("indistinguishable classes tie") {
  const BinomialClassifier m{0.3, 0.3, 0.5};
  for (int x : {0, 1}) {
    CHECK(classify(m, x, RuleKind::Lrse).tie);
    CHECK(classify(m, x, RuleKind::Map).tie);
    CHECK(classify(m, x, RuleKind::Map).psi_index == 0);
  }
  // With uneven prior mass only the LRSE is indifferent.
  CHECK(classify({0.3, 0.3, 0.2}, 1, RuleKind::Lrse).tie);
  CHECK_FALSE(classify({0.3, 0.3, 0.2}, 1, RuleKind::Map).tie);
}

TEST_CASE("closed-form classifier agrees with the generic pipeline") {
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      for (int e = 1; e < 20; ++e) {
        const BinomialClassifier m{i / 20.0, j / 20.0, e / 20.0};
        const FiniteModel fm = to_finite_model(m);
        for (int x : {0, 1}) {
          const BeliefTables t = belief_tables(fm, Observation::at_index(x));
          const auto l = lrse(t);
          const auto p = map(t);
          CHECK(classify(m, x, RuleKind::Lrse).psi_index == l.psi_index);
          CHECK(classify(m, x, RuleKind::Lrse).tie == l.tie);
          CHECK(classify(m, x, RuleKind::Map).psi_index == p.psi_index);
          CHECK(classify(m, x, RuleKind::Map).tie == p.tie);
        }
      }
    }
  }
}

TEST_CASE("classifier error sums") {
  const auto lr = classifier_risks({0.05, 0.80, 0.05}, RuleKind::Lrse);
  CHECK(lr.per_class_error[0] == doctest::Approx(0.05));
  CHECK(lr.per_class_error[1] == doctest::Approx(0.20));
  CHECK(lr.unweighted_sum == doctest::Approx(0.25));
  const auto mp = classifier_risks({0.05, 0.80, 0.01}, RuleKind::Map);
  CHECK(mp.per_class_error[0] == 0.0);
  CHECK(mp.per_class_error[1] == 1.0);
  CHECK(mp.unweighted_sum == 1.0);
  for (RuleKind k : {RuleKind::Lrse, RuleKind::Map}) {
    CHECK(classifier_risks({0.0, 1.0, 0.3}, k).unweighted_sum == 0.0);
  }
  // the closed form matches the exact prior risk of the tabulated rule
  for (int e = 1; e < 10; ++e) {
    const BinomialClassifier m{0.2, 0.7, e / 10.0};
    const FiniteModel fm = to_finite_model(m);
    for (RuleKind k : {RuleKind::Lrse, RuleKind::Map}) {
      const auto generic = prior_risk(ZeroOne{}, tabulate_rule(k, fm), fm);
      CHECK(generic.unweighted_sum == doctest::Approx(classifier_risks(m, k).unweighted_sum).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(classify({0.1, 0.2, 0.0}, 1, RuleKind::Map), Error);
  CHECK_THROWS_AS(classify({0.1, 0.2, 0.5}, 2, RuleKind::Map), Error);
}

TEST_CASE("scalar regression estimates") {
  const auto e = regression_estimates(scalar_regression(1.0));
  CHECK(e.mu_post_psi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.var_post_psi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.var_prior_psi == 1.0);
  CHECK(e.psi_lrse == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.psi_lrse == doctest::Approx(e.b(0)).epsilon(1e-15));
  CHECK(e.psi_map == doctest::Approx(0.5));
  const auto p = regression_predict(scalar_regression(1.0));
  CHECK(p.z_lrse == doctest::Approx(2.0).epsilon(1e-14));

  const auto zero = regression_estimates(scalar_regression(0.0));
  CHECK(zero.psi_lrse == 0.0);
  CHECK(zero.psi_map == 0.0);
  CHECK(regression_predict(scalar_regression(0.0)).z_lrse == 0.0);

  const auto flat = regression_estimates(scalar_regression(1.7, 1e8));
  CHECK(flat.psi_lrse == doctest::Approx(flat.b(0)).epsilon(1e-6));
}

TEST_CASE("LRSE tends to least squares under a flat prior") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto m = rbtest::random_regression(seed, false);
    m.tau2 = 1e8;
    const auto e = regression_estimates(m);
    const double wb = m.w.dot(e.b);
    CHECK(std::abs(e.psi_lrse - wb) <= 1e-6 * std::max(1.0, std::abs(wb)));
  }
}

TEST_CASE("prediction identity and inflation on random instances") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto m = rbtest::random_regression(seed, seed % 2 == 0);
    const auto e = regression_estimates(m);
    const auto p = regression_predict(m);
    const double ww = m.w.squaredNorm();
    const double general = (1.0 + m.sigma2 / (m.tau2 * ww)) * e.psi_lrse;
    CHECK(std::abs(p.z_lrse - general) <= 1e-10 * std::max(1.0, std::abs(general)));
    if (seed % 2 == 0) {
      const double unit = (1.0 + m.sigma2 / m.tau2) * e.psi_lrse;
      CHECK(std::abs(p.z_lrse - unit) <= 1e-10 * std::max(1.0, std::abs(unit)));
    }
    CHECK(std::abs(p.z_lrse) >= std::abs(p.mu_post_z));
    CHECK(e.var_prior_psi > e.var_post_psi);
  }
}

TEST_CASE("rank-deficient designs are rejected") {
  GaussianRegression m;
  m.X.resize(3, 2);
  m.X << 1, 2, 2, 4, 3, 6;
  m.y = Eigen::VectorXd::Ones(3);
  m.w = Eigen::VectorXd::Ones(2);
  try {
    regression_estimates(m);
    FAIL("expected SingularDesign");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::SingularDesign);
  }
  m.X << 1, 0, 0, 1, 1, 1;
  m.w = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(regression_estimates(m), Error);
}

TEST_CASE("class prediction: symmetric priors agree, LRSE dominates MAP") {
  for (int n : {0, 1, 5, 20}) {
    for (double cbar : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      for (double f : {0.01, 0.3, 1.0, 2.5, 50.0}) {
        for (double a : {0.5, 1.0, 3.0}) {
          const BetaBernoulliPredictor sym{a, a, n, cbar, f};
          CHECK(predict_class(sym, RuleKind::Map) == predict_class(sym, RuleKind::Lrse));
        }
        for (double b : {1.0, 14.0, 32.0, 100.0}) {
          const BetaBernoulliPredictor m{1.0, b, n, cbar, f};
          CHECK(predict_class(m, RuleKind::Map) <= predict_class(m, RuleKind::Lrse));
        }
      }
    }
  }
}

TEST_CASE("class prediction thresholds in the feature") {
  const double t = class_threshold_x(1.0, 14.0, 10, 0.0, 1.0, RuleKind::Lrse);
  CHECK(t == doctest::Approx(0.5 + std::log(24.0 / 14.0)).epsilon(1e-14));
  CHECK(class_threshold_x(1.0, 14.0, 10, 0.0, 1.0, RuleKind::Map) == doctest::Approx(0.5 + std::log(24.0)));
  for (double x : {t - 1e-6, t + 1e-6}) {
    const BetaBernoulliPredictor m{1.0, 14.0, 10, 0.0, f_ratio_gaussian(x, 1.0)};
    CHECK(predict_class(m, RuleKind::Lrse) == (x > t ? 1 : 0));
  }
  // exactly on the boundary the rule picks class 1
  CHECK(predict_class({1.0, 1.0, 0, 0.0, 1.0}, RuleKind::Map) == 1);
  CHECK(predict_class({2.0, 6.0, 0, 0.0, 3.0}, RuleKind::Map) == 1);
  CHECK_THROWS_AS(class_threshold_x(1.0, 1.0, 0, 0.0, 0.0, RuleKind::Map), Error);
  CHECK_THROWS_AS(predict_class({1.0, 1.0, 2, 1.5, 1.0}, RuleKind::Map), Error);
}

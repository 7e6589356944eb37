// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/losses.hpp"
#include "core/model.hpp"

namespace relbelief {

/// A chosen psi with the value of the criterion it optimizes. Ties are never
/// resolved silently: the lowest index is returned, `tie` is set and the full
/// optimal set is kept.
struct EstimateResult {
  std::size_t psi_index = 0;
  double criterion_value = 0.0;
  bool tie = false;
  std::vector<std::size_t> argmax_set;
  std::optional<Truncation> truncation;
};

/// Least relative surprise estimate: argmax of the relative belief ratio.
EstimateResult lrse(const BeliefTables& tables);
/// Maximum a posteriori: argmax of the marginal posterior.
EstimateResult map(const BeliefTables& tables);
/// Exhaustive minimizer of the posterior risk. The criterion value is the
/// negated risk, so that the argmax convention holds for every estimator.
EstimateResult bayes_rule(const LossSpec& loss, const BeliefTables& tables);
EstimateResult predict_lrse(const PredictiveTables& pred);

/// Smallest prior mass over the LRSE argmax set. For capped losses with eta at
/// or below this value the Bayes rule is the LRSE.
double lrse_stability_bound(const BeliefTables& tables);

enum class RuleKind { Lrse, Map };

/// Tabulates an estimator over a finite sample space (lowest-index tie policy).
/// Observations with zero evidence map to psi 0.
DecisionRule tabulate_rule(RuleKind kind, const FiniteModel& model);
DecisionRule tabulate_bayes_rule(const LossSpec& loss, const FiniteModel& model);

/// h(psi) for the indicator-form losses; BallIndicator has no such form.
std::vector<double> indicator_weights(const LossSpec& loss, const FiniteModel& model);

/// Integral of h(delta(x)) [pi(delta(x)|x) - pi(delta(x))] against the prior
/// predictive, by exact enumeration. The rule is Bayesian unbiased under the
/// loss iff the result is nonnegative.
double unbiasedness_gap(const LossSpec& loss, const DecisionRule& rule, const FiniteModel& model);

/// pi(delta(x)|x) >= pi(delta(x)) per x. Observations with zero evidence pass.
std::vector<bool> uniform_unbiasedness_check(const DecisionRule& rule, const FiniteModel& model);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {
namespace {

EstimateResult pick_max(std::span<const double> values, std::optional<Truncation> trunc) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "empty psi support");
  EstimateResult r;
  r.argmax_set = argmax_set(values);
  r.psi_index = r.argmax_set.front();
  r.criterion_value = values[r.psi_index];
  r.tie = r.argmax_set.size() > 1;
  r.truncation = trunc;
  return r;
}

bool has_evidence(const FiniteModel& model, std::size_t x) {
  for (std::size_t t = 0; t < model.theta_count(); ++t) {
    if (model.likelihood(t, x) > 0.0) return true;
  }
  return false;
}

void require_table(const FiniteModel& model) {
  if (!model.has_table()) {
    fail(ErrorCode::InfiniteSampleSpace, "operation needs a tabulated sample space");
  }
}

}  // namespace

EstimateResult lrse(const BeliefTables& tables) { return pick_max(tables.rb, tables.truncation); }

EstimateResult map(const BeliefTables& tables) {
  return pick_max(tables.marg_post, tables.truncation);
}

EstimateResult bayes_rule(const LossSpec& loss, const BeliefTables& tables) {
  std::vector<double> neg = posterior_risks(loss, tables);
  for (double& v : neg) v = -v;
  return pick_max(neg, tables.truncation);
}

EstimateResult predict_lrse(const PredictiveTables& pred) { return pick_max(pred.rb_pred, std::nullopt); }

double lrse_stability_bound(const BeliefTables& tables) {
  const EstimateResult best = lrse(tables);
  double bound = tables.marg_prior[best.argmax_set.front()];
  for (std::size_t j : best.argmax_set) bound = std::min(bound, tables.marg_prior[j]);
  return bound;
}

DecisionRule tabulate_rule(RuleKind kind, const FiniteModel& model) {
  require_table(model);
  DecisionRule rule(model.x_count(), 0);
  for (std::size_t x = 0; x < model.x_count(); ++x) {
    if (!has_evidence(model, x)) continue;
    const BeliefTables t = belief_tables(model, Observation::at_index(x));
    rule[x] = (kind == RuleKind::Lrse ? lrse(t) : map(t)).psi_index;
  }
  return rule;
}

DecisionRule tabulate_bayes_rule(const LossSpec& loss, const FiniteModel& model) {
  require_table(model);
  DecisionRule rule(model.x_count(), 0);
  for (std::size_t x = 0; x < model.x_count(); ++x) {
    if (!has_evidence(model, x)) continue;
    rule[x] = bayes_rule(loss, belief_tables(model, Observation::at_index(x))).psi_index;
  }
  return rule;
}

std::vector<double> indicator_weights(const LossSpec& loss, const FiniteModel& model) {
  const auto prior = model.marginal_prior();
  std::vector<double> h(model.psi_count(), 1.0);
  if (std::holds_alternative<ZeroOne>(loss)) return h;
  if (std::holds_alternative<PriorBased>(loss)) {
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / prior[j];
    return h;
  }
  if (const auto* c = std::get_if<CappedPriorBased>(&loss)) {
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / std::max(c->eta, prior[j]);
    return h;
  }
  if (const auto* c = std::get_if<DiscretizedCapped>(&loss)) {
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / std::max(c->eta, prior[j]);
    return h;
  }
  if (const auto* w = std::get_if<WeightedIndicator>(&loss)) {
    validate(loss);
    if (w->h.size() != h.size()) {
      fail(ErrorCode::InvalidArgument, "weights length does not match psi support");
    }
    return w->h;
  }
  fail(ErrorCode::InvalidArgument, "loss " + describe(loss) + " is not of indicator form");
}

double unbiasedness_gap(const LossSpec& loss, const DecisionRule& rule, const FiniteModel& model) {
  require_table(model);
  if (rule.size() != model.x_count()) {
    fail(ErrorCode::InvalidArgument, "decision rule is not total on the sample space");
  }
  if (!model.rows_stochastic()) {
    fail(ErrorCode::InvalidArgument, "unbiasedness needs likelihood rows that sum to one");
  }
  const std::vector<double> h = indicator_weights(loss, model);
  NeumaierSum gap;
  for (std::size_t x = 0; x < model.x_count(); ++x) {
    if (!has_evidence(model, x)) continue;
    const std::size_t d = rule[x];
    if (d >= model.psi_count()) fail(ErrorCode::UnknownPsi, "decision rule maps to an unknown psi");
    const Posterior post = compute_posterior(model, Observation::at_index(x));
    const BeliefTables t = marginalize(post.probs, model);
    gap += post.evidence * h[d] * (t.marg_post[d] - t.marg_prior[d]);
  }
  return gap.value();
}

std::vector<bool> uniform_unbiasedness_check(const DecisionRule& rule, const FiniteModel& model) {
  require_table(model);
  if (rule.size() != model.x_count()) {
    fail(ErrorCode::InvalidArgument, "decision rule is not total on the sample space");
  }
  std::vector<bool> ok(model.x_count(), true);
  for (std::size_t x = 0; x < model.x_count(); ++x) {
    if (!has_evidence(model, x)) continue;
    const BeliefTables t = belief_tables(model, Observation::at_index(x));
    const std::size_t d = rule[x];
    if (d >= t.size()) fail(ErrorCode::UnknownPsi, "decision rule maps to an unknown psi");
    // rb >= 1 up to rounding of the normalization
    ok[x] = t.rb[d] >= 1.0 - kSumTolerance;
  }
  return ok;
}

}  // namespace relbelief

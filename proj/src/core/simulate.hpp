// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/estimators.hpp"
#include "core/losses.hpp"

namespace relbelief {

/// How the class-1 probability is drawn once the new label c is fixed.
enum class SimProtocol {
  // epsilon ~ Beta(alpha, beta), ignoring c.
  PriorDrawn,
  // epsilon ~ Beta(alpha + c, beta + 1 - c), the law of epsilon given c.
  ConjugateConditional,
};

SimProtocol parse_protocol(std::string_view name);
const char* protocol_name(SimProtocol p) noexcept;

struct SimConfig {
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 1.0;
  int n = 10;
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 0;
  SimProtocol protocol = SimProtocol::PriorDrawn;
  unsigned threads = 1;
};

void validate(const SimConfig& cfg);

/// Exact misclassification counts per true class c.
struct SimCounts {
  std::uint64_t reps = 0;
  std::uint64_t map_errors[2] = {0, 0};
  std::uint64_t lrse_errors[2] = {0, 0};
};

/// Replication r of cell (beta, c) draws from Philox stream r under
/// stream_key(seed, beta, c): epsilon, then the n past labels, then x ~ N(c mu, 1).
/// Both rules classify the same draws.
SimCounts simulate_counts(const SimConfig& cfg);

struct MethodRisk {
  RuleKind method = RuleKind::Map;
  double m0 = 0.0;  // M_0(delta != 0)
  double m1 = 0.0;  // M_1(delta != 1)
  double sum = 0.0;
  double se0 = 0.0;
  double se1 = 0.0;
  double se_sum = 0.0;
  std::uint64_t errors0 = 0;
  std::uint64_t errors1 = 0;
};

/// Monte Carlo standard errors use the smoothed rate (k + 1) / (reps + 2), so
/// that they stay positive for all-or-nothing counts.
MethodRisk method_risk(const SimCounts& counts, RuleKind method);

/// Conditional misclassification risks for MAP and LRSE, in that order.
std::vector<MethodRisk> conditional_risk_mc(const SimConfig& cfg);
RiskReport to_risk_report(const MethodRisk& risk);

struct ClassificationRow {
  double beta = 0.0;
  MethodRisk map;
  MethodRisk lrse;
};

/// One row per beta; every other setting comes from `base`.
std::vector<ClassificationRow> classification_table(const SimConfig& base, const std::vector<double>& betas);
std::string format_classification_table(const std::vector<ClassificationRow>& rows, const SimConfig& base);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core/model.hpp"

namespace relbelief {

// I(Psi(theta) != psi)
struct ZeroOne {};
// I(Psi(theta) != psi) / pi_Psi(Psi(theta)); finite psi supports only.
struct PriorBased {};
// I(Psi(theta) != psi) / max(eta, pi_Psi(Psi(theta)))
struct CappedPriorBased {
  double eta = 0.0;
};
// I(Psi(theta) != psi) h(Psi(theta))
struct WeightedIndicator {
  std::vector<double> h;
};
// I(Psi(theta) not in the closed Euclidean ball of radius lambda about psi)
struct BallIndicator {
  double lambda = 0.0;
};
// Capped loss on a grid of bin width lambda; the prior masses are bin masses.
struct DiscretizedCapped {
  double lambda = 0.0;
  double eta = 0.0;
};

using LossSpec = std::variant<ZeroOne, PriorBased, CappedPriorBased, WeightedIndicator,
                              BallIndicator, DiscretizedCapped>;

/// Parses `zero-one | prior-based | capped:<eta> | ball:<lambda> |
/// weighted:<file> | discretized:<lambda>:<eta>`. The weights file holds one
/// nonnegative number per psi, separated by whitespace or commas.
LossSpec parse_loss(std::string_view spec);
std::string describe(const LossSpec& loss);
void validate(const LossSpec& loss);

/// r(candidate | x) under `loss`, computed from the psi-level tables.
double posterior_risk(const LossSpec& loss, std::size_t candidate, const BeliefTables& tables);
std::vector<double> posterior_risks(const LossSpec& loss, const BeliefTables& tables);

double loss_value(const LossSpec& loss, std::size_t theta, std::size_t psi,
                  const FiniteModel& model);

// x-index -> psi-index
using DecisionRule = std::vector<std::size_t>;

struct RiskReport {
  std::vector<double> per_class_error;  // M_psi(delta != psi)
  double unweighted_sum = 0.0;
  double prior_weighted_sum = 0.0;
  double prior_risk = 0.0;
  // |r(delta) - (#Psi - E_M rb(delta(x)))|, PriorBased only; zero otherwise.
  double identity_residual = 0.0;
};

/// M_psi(x) table, row-major psi x sample space, by exact fiber averaging.
std::vector<double> conditional_prior_predictive(const FiniteModel& model);

/// Exact prior risk of a total decision rule over a finite sample space.
/// `workers` splits the sample space into chunks; results do not depend on it
/// beyond compensated-summation rounding.
RiskReport prior_risk(const LossSpec& loss, const DecisionRule& rule,
                      const FiniteModel& model, unsigned workers = 1);

}  // namespace relbelief

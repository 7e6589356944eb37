// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/countable.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {

FiniteModel geometric_poisson_model(std::size_t points, double ratio, double tail_bound) {
  if (points == 0 || !(ratio > 0.0 && ratio < 1.0)) {
    fail(ErrorCode::InvalidArgument, "geometric prior needs points > 0 and 0 < ratio < 1");
  }
  const double tail = std::pow(ratio, static_cast<double>(points));
  if (tail > tail_bound || tail_bound > 1e-9) {
    fail(ErrorCode::Validation, "truncation: discarded tail mass " + to_text(tail) +
                                    " exceeds the declared bound");
  }
  ModelParts parts;
  parts.theta.resize(points);
  parts.prior.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    parts.theta[k] = {"k" + std::to_string(k), {static_cast<double>(k)}};
    parts.prior[k] = (1.0 - ratio) * std::pow(ratio, static_cast<double>(k));
  }
  parts.density = [](std::size_t k, double x) {
    if (x < 0.0 || x != std::floor(x)) return 0.0;
    const double mean = static_cast<double>(k) + 1.0;
    return std::exp(x * std::log(mean) - mean - std::lgamma(x + 1.0));
  };
  parts.truncation = Truncation{points, tail_bound};
  return FiniteModel::create(std::move(parts));
}

}  // namespace relbelief

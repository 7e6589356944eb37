// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "core/error.hpp"

namespace relbelief {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::UnknownPsi: return "UnknownPsi";
    case ErrorCode::InfiniteSampleSpace: return "InfiniteSampleSpace";
    case ErrorCode::NonStochasticKernel: return "NonStochasticKernel";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ZeroBinMass: return "ZeroBinMass";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::TooLargeForBruteForce: return "TooLargeForBruteForce";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NotAttainable: return "NotAttainable";
    case ErrorCode::TablesMismatch: return "TablesMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

void NeumaierSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    compensation_ += (sum_ - t) + v;
  } else {
    compensation_ += (v - t) + sum_;
  }
  sum_ = t;
}

double stable_sum(std::span<const double> values) noexcept {
  NeumaierSum s;
  for (double v : values) s += v;
  return s.value();
}

std::vector<double> normalized(std::span<const double> weights, double* total) {
  const double sum = stable_sum(weights);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    fail(ErrorCode::InvalidArgument, "cannot normalize a vector with total " + to_text(sum));
  }
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= sum;
  if (total != nullptr) *total = sum;
  return out;
}

bool is_tie(double leader, double value) noexcept {
  if (leader == value) return true;
  return std::abs(leader - value) <= kTieRelTolerance * std::abs(leader);
}

std::vector<std::size_t> argmax_set(std::span<const double> values) {
  auto groups = rank_groups(values, true);
  if (groups.empty()) return {};
  return groups.front();
}

std::vector<std::size_t> argmin_set(std::span<const double> values) {
  auto groups = rank_groups(values, false);
  if (groups.empty()) return {};
  return groups.front();
}

std::vector<std::vector<std::size_t>> rank_groups(std::span<const double> scores,
                                                  bool descending) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });

  std::vector<std::vector<std::size_t>> groups;
  double leader = 0.0;
  for (std::size_t idx : order) {
    if (groups.empty() || !is_tie(leader, scores[idx])) {
      groups.push_back({idx});
      leader = scores[idx];
    } else {
      groups.back().push_back(idx);
    }
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

std::string to_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace relbelief

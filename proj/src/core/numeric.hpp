// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace relbelief {

// Tolerance on the unit-sum invariant of every stored probability vector.
inline constexpr double kSumTolerance = 1e-12;

// Two scores are the same rank when they agree to this relative precision.
inline constexpr double kTieRelTolerance = 1e-12;

/// Neumaier-compensated accumulator. Partial sums from independent chunks can
/// be merged, so chunked and sequential summation agree to a few ulps.
class NeumaierSum {
 public:
  void add(double v) noexcept;
  NeumaierSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  void merge(const NeumaierSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double stable_sum(std::span<const double> values) noexcept;

/// The one normalization routine: scales `weights` to unit sum. Throws
/// InvalidArgument when the total is not positive and finite. The raw total is
/// written to `total` when given.
std::vector<double> normalized(std::span<const double> weights,
                               double* total = nullptr);

bool is_tie(double leader, double value) noexcept;

/// 12 significant digits, for messages.
std::string to_text(double v);

std::vector<std::size_t> argmax_set(std::span<const double> values);
std::vector<std::size_t> argmin_set(std::span<const double> values);

/// Partitions indices into tie classes ordered by score (descending when
/// `descending`, else ascending). Within a class indices are increasing.
std::vector<std::vector<std::size_t>> rank_groups(std::span<const double> scores,
                                                  bool descending);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace relbelief {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Philox4x32-10 counter-based generator. Each (key, stream) pair is an
/// independent sequence that needs no warm-up, so every replication of a
/// simulation gets its own stream and the results do not depend on how the
/// replications are split across threads.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// The bijection itself: ten rounds over `counter` under `key`.
  static Block block(Block counter, Key key) noexcept;

 private:
  Block counter_{};
  Key key_{};
  Block buffer_{};
  unsigned index_ = 4;
};

/// Key for the substreams of one simulation cell.
std::uint64_t stream_key(std::uint64_t seed, double beta, int c) noexcept;

}  // namespace relbelief

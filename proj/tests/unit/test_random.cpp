// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <boost/random/beta_distribution.hpp>
#include <cmath>
#include <set>

#include "core/random.hpp"
#include "doctest.h"

using namespace relbelief;
using Block = Philox4x32::Block;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a();
    CHECK(va == b());
    differs_c = differs_c || va != c();
    differs_d = differs_d || va != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("outputs do not repeat over a long run") {
  Philox4x32 g(1, 0);
  std::set<std::uint32_t> seen;
  for (int i = 0; i < 100000; ++i) seen.insert(g());
  // birthday collisions among 1e5 draws from 2^32 are about one
  CHECK(seen.size() > 99990);
}

TEST_CASE("stream keys separate cells") {
  CHECK(stream_key(0, 1.0, 0) != stream_key(0, 1.0, 1));
  CHECK(stream_key(0, 1.0, 0) != stream_key(0, 14.0, 0));
  CHECK(stream_key(0, 1.0, 0) != stream_key(1, 1.0, 0));
  CHECK(stream_key(5, 32.0, 1) == stream_key(5, 32.0, 1));
}

TEST_CASE("Beta draws have the right moments") {
  const double a = 2.0, b = 14.0;
  boost::random::beta_distribution<double> law(a, b);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int r = 0; r < n; ++r) {
    Philox4x32 g(99, r);
    const double e = law(g);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double true_mean = a / (a + b);
  const double true_var = a * b / ((a + b) * (a + b) * (a + b + 1));
  CHECK(std::abs(mean - true_mean) < 4 * std::sqrt(true_var / n));
  CHECK(var == doctest::Approx(true_var).epsilon(0.02));
}

TEST_CASE("uniform bits are balanced") {
  Philox4x32 g(3, 3);
  int ones = 0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) ones += __builtin_popcount(g());
  const double frac = double(ones) / (32.0 * draws);
  CHECK(std::abs(frac - 0.5) < 4 * 0.5 / std::sqrt(32.0 * draws));
}

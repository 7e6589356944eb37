// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace relbelief;

TEST_CASE("Gauss-Legendre rules are exact to degree 2n - 1") {
  for (int n : {1, 2, 5, 10, 20}) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i] + 0.5, d);
      // integral of (x + 1/2)^d over [-1, 1]
      const double exact = (std::pow(1.5, d + 1) - std::pow(-0.5, d + 1)) / (d + 1);
      CHECK(q == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("adaptive integration of smooth and peaked integrands") {
  const auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi); };
  CHECK(integrate(pdf, -8, 8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate(pdf, 0, 1) == doctest::Approx(rbtest::normal_cdf(1.0) - 0.5).epsilon(1e-11));
  const auto peak = [](double z) { return std::exp(-0.5 * z * z * 1e4) * 100 / std::sqrt(2 * std::numbers::pi); };
  CHECK(integrate(peak, -3, 5) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate([](double z) { return std::sqrt(z); }, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("non-finite integrands fail loudly") {
  const auto bad = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  try {
    integrate(bad, 0, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
  }
}

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace relbelief {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  int max_depth = 48;
  int order = 10;
};

/// Adaptive bisection with a fixed Gauss-Legendre rule: an interval is accepted
/// when its two halves agree with the whole to the requested tolerance.
/// Throws QuadratureFailure on non-finite values or when the depth runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace relbelief

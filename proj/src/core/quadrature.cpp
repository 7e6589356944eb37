// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / dp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    // Re-evaluate the derivative at the converged root for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace {

const GaussLegendreRule& cached_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

double apply(const GaussLegendreRule& rule, const std::function<double(double)>& f, double a,
             double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  NeumaierSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]);
    if (!std::isfinite(v)) {
      fail(ErrorCode::QuadratureFailure, "integrand is not finite at " +
                                             to_text(mid + half * rule.nodes[i]));
    }
    s += rule.weights[i] * v;
  }
  return half * s.value();
}

double adapt(const GaussLegendreRule& rule, const std::function<double(double)>& f, double a,
             double b, double whole, const QuadratureOptions& opts, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = apply(rule, f, a, mid);
  const double right = apply(rule, f, mid, b);
  const double refined = left + right;
  if (std::abs(refined - whole) <= std::max(opts.abs_tol, opts.rel_tol * std::abs(refined))) {
    return refined;
  }
  if (depth >= opts.max_depth) {
    fail(ErrorCode::QuadratureFailure, "no convergence on [" + to_text(a) + ", " + to_text(b) + "]");
  }
  QuadratureOptions sub = opts;
  sub.abs_tol = 0.5 * opts.abs_tol;
  return adapt(rule, f, a, mid, left, sub, depth + 1) + adapt(rule, f, mid, b, right, sub, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (!(b > a)) fail(ErrorCode::InvalidArgument, "integration interval is empty");
  const GaussLegendreRule& rule = cached_rule(opts.order);
  const double whole = apply(rule, f, a, b);
  // The relative target also becomes an absolute budget that is split between
  // the halves, so endpoint singularities still terminate.
  QuadratureOptions global = opts;
  global.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(whole));
  return adapt(rule, f, a, b, whole, global, 0);
}

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/model.hpp"
#include "core/regions.hpp"

namespace relbelief {

/// One-dimensional continuous model: a positive prior density on
/// [lower, upper] (tail mass outside at most 1e-9) and a likelihood f(x | psi).
struct ContinuousModel1D {
  std::function<double(double)> prior_density;
  std::function<double(double psi, double x)> likelihood;
  double lower = 0.0;
  double upper = 1.0;
  std::string name;
};

/// psi ~ N(0, tau^2), x | psi ~ N(psi, sigma^2), truncated to +-8 tau.
ContinuousModel1D normal_normal_testbed(double tau, double sigma);

/// Equal-width partition with midpoint representatives. When lambda does not
/// divide the support the last bin extends past `upper`.
struct RegularGrid {
  double lambda = 0.0;
  double lower = 0.0;
  std::size_t bins = 0;
  std::vector<double> representatives;
  std::vector<double> bin_prior;  // Pi(B) by quadrature, before renormalization
  std::vector<double> bin_post;   // Pi(B | x), normalized over the grid
  double evidence = 0.0;          // integral of prior x likelihood over the grid

  std::pair<double, double> interval(std::size_t bin) const;
  std::size_t bin_of(double psi) const;
};

struct DiscretizedModel {
  FiniteModel model;  // psi = bins; a single tabulated observation
  RegularGrid grid;
};

/// Bin masses by adaptive Gauss-Legendre quadrature. Throws InvalidArgument
/// unless lambda <= (upper - lower) / 4, ZeroBinMass when a bin carries no
/// prior mass, QuadratureFailure when an integral does not converge.
DiscretizedModel build_grid(const ContinuousModel1D& model, double x, double lambda);

/// eta(lambda) = half the prior mass of the LRSE bin.
double eta_schedule(const RegularGrid& grid, std::size_t lrse_bin);

struct ConvergenceRow {
  double lambda = 0.0;
  double eta = 0.0;  // NaN when the estimator does not use a cap
  std::size_t bins = 0;
  double estimate = 0.0;
  double error = 0.0;  // |estimate - target|
};

/// Throws HypothesisViolated unless the relative belief ratio on the finest
/// grid has a unique maximizer that is separated from every point further
/// than `radius` away.
void check_lrse_hypotheses(const DiscretizedModel& finest, double radius);

/// Bayes rule under the discretized capped loss with eta = eta(lambda).
std::vector<ConvergenceRow> capped_bayes_convergence(const ContinuousModel1D& model, double x,
                                                std::span<const double> lambdas, double target);
/// LRSE of the discretized problem.
std::vector<ConvergenceRow> lrse_convergence(const ContinuousModel1D& model, double x,
                                                  std::span<const double> lambdas, double target);

/// Union of closed intervals, sorted and non-overlapping.
using IntervalSet = std::vector<std::pair<double, double>>;

IntervalSet undiscretize(const RegularGrid& grid, std::span<const std::size_t> members);
/// Members recovered from a union of bins of the same grid.
std::vector<std::size_t> rebin(const RegularGrid& grid, const IntervalSet& set);
IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b);
/// Posterior content of `set` under the continuous model (by quadrature).
double posterior_mass(const ContinuousModel1D& model, double x, const IntervalSet& set);

struct DistanceRow {
  double lambda = 0.0;
  double eta = 0.0;  // NaN for the relative surprise region
  double distance = 0.0;
  double attained_mass = 0.0;
};

struct RegionConvergence {
  double gamma = 0.0;
  double reference_lambda = 0.0;
  IntervalSet reference;                // C_gamma on the reference grid
  std::vector<DistanceRow> rs_rows;     // C_{lambda,gamma} vs reference
  std::vector<DistanceRow> lpl_rows;    // L_{eta,lambda,gamma} vs reference
};

/// Posterior mass of the symmetric difference between undiscretized regions
/// and the relative surprise region on a reference grid four times finer
/// than the smallest lambda.
RegionConvergence region_convergence(const ContinuousModel1D& model, double x, double gamma,
                                          std::span<const double> lambdas,
                                          std::span<const double> etas);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relbelief {

/// A point of the parameter space: a display label plus optional coordinates.
struct ParamPoint {
  std::string label;
  std::vector<double> coord;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// Records that a countable parameter space was cut at `truncation_point`
/// points with at most `tail_mass_bound` prior mass discarded.
struct Truncation {
  std::size_t truncation_point = 0;
  double tail_mass_bound = 0.0;

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

// Where the likelihood came from. Kept so that a model can be written back out
// in the same form it was read.
struct LikelihoodFamily {
  enum class Kind { Table, Bernoulli, Binomial, Normal, Callback };

  Kind kind = Kind::Table;
  int trials = 1;
  std::vector<double> p;
  std::vector<double> mean;
  std::vector<double> sd;

  friend bool operator==(const LikelihoodFamily&, const LikelihoodFamily&) = default;
};

using DensityCallback = std::function<double(std::size_t theta, double x)>;

/// Sampling law g of a future value y, per parameter point and optionally per
/// observed data point. Layout is [theta][y] or [theta][x][y].
struct FutureKernel {
  std::size_t y_count = 0;
  bool x_dependent = false;
  std::size_t x_count = 0;
  std::vector<double> values;
  std::vector<double> y_values;

  double at(std::size_t theta, std::size_t x, std::size_t y) const;

  friend bool operator==(const FutureKernel&, const FutureKernel&) = default;
};

/// Observed data: an index into a tabulated sample space, or a raw value that
/// is either looked up in the table or fed to the density callback.
struct Observation {
  std::optional<std::size_t> index;
  double value = 0.0;

  static Observation at_index(std::size_t i) { return {i, static_cast<double>(i)}; }
  static Observation at_value(double v) { return {std::nullopt, v}; }
};

struct ModelParts {
  std::vector<ParamPoint> theta;
  std::vector<double> prior;
  // Row-major theta x sample-space table; leave empty when `density` is set.
  std::vector<double> likelihood;
  std::size_t x_count = 0;
  std::vector<double> x_values;
  DensityCallback density;
  LikelihoodFamily family;
  // Empty psi_map means psi = theta.
  std::vector<std::size_t> psi_map;
  std::vector<ParamPoint> psi;
  std::optional<FutureKernel> future_kernel;
  std::optional<Truncation> truncation;
};

/// Finite Bayesian model: prior over a finite theta support, a likelihood, and
/// a surjective map onto the psi support. Immutable once created.
class FiniteModel {
 public:
  /// Validates and normalizes. The prior is rescaled silently when its sum is
  /// within 1e-9 of one, with a warning within 1e-2, and rejected otherwise.
  static FiniteModel create(ModelParts parts);

  std::size_t theta_count() const noexcept { return theta_.size(); }
  std::size_t psi_count() const noexcept { return psi_.size(); }
  /// Zero for models with a density callback.
  std::size_t x_count() const noexcept { return x_count_; }
  bool has_table() const noexcept { return !density_; }

  const std::vector<ParamPoint>& theta() const noexcept { return theta_; }
  const std::vector<ParamPoint>& psi() const noexcept { return psi_; }
  std::span<const double> prior() const noexcept { return prior_; }
  std::span<const double> marginal_prior() const noexcept { return marginal_prior_; }
  std::span<const std::size_t> psi_map() const noexcept { return psi_map_; }
  std::size_t psi_of(std::size_t theta) const { return psi_map_.at(theta); }
  std::span<const std::size_t> fiber(std::size_t psi) const { return fibers_.at(psi); }
  /// Pi(theta | Psi(theta) = psi) for the fiber containing theta.
  double conditional_prior(std::size_t theta) const;

  double likelihood(std::size_t theta, std::size_t x) const;
  std::span<const double> x_values() const noexcept { return x_values_; }
  std::size_t resolve_x(double value) const;
  std::vector<double> likelihood_column(const Observation& obs) const;
  /// True when every likelihood row sums to one within 1e-10.
  bool rows_stochastic() const;

  const LikelihoodFamily& family() const noexcept { return family_; }
  const std::optional<FutureKernel>& future_kernel() const noexcept { return future_kernel_; }
  const std::optional<Truncation>& truncation() const noexcept { return truncation_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Field-for-field equality; density callbacks are compared by presence.
  bool same_as(const FiniteModel& other) const;

 private:
  FiniteModel() = default;

  std::vector<ParamPoint> theta_;
  std::vector<double> prior_;
  std::vector<double> likelihood_;
  std::size_t x_count_ = 0;
  std::vector<double> x_values_;
  DensityCallback density_;
  LikelihoodFamily family_;
  std::vector<std::size_t> psi_map_;
  std::vector<ParamPoint> psi_;
  std::vector<std::vector<std::size_t>> fibers_;
  std::vector<double> marginal_prior_;
  std::optional<FutureKernel> future_kernel_;
  std::optional<Truncation> truncation_;
  std::vector<std::string> warnings_;
};

struct Posterior {
  std::vector<double> probs;
  double evidence = 0.0;
};

/// Marginal prior, marginal posterior and relative belief ratio over the psi
/// support for one observation.
struct BeliefTables {
  Observation observation;
  std::vector<double> marg_prior;
  std::vector<double> marg_post;
  std::vector<double> rb;
  double evidence = 0.0;
  std::vector<ParamPoint> psi;
  std::optional<Truncation> truncation;

  std::size_t size() const noexcept { return marg_post.size(); }
};

struct PredictiveTables {
  std::vector<double> prior_pred;
  std::vector<double> post_pred;
  std::vector<double> rb_pred;
  std::vector<double> y_values;
};

/// pi(theta|x) = pi(theta) f_theta(x) / m(x). Throws ZeroEvidence when m(x) = 0.
Posterior compute_posterior(const FiniteModel& model, const Observation& obs);

/// Sums prior and posterior over psi fibers and forms the ratio.
BeliefTables marginalize(std::span<const double> posterior, const FiniteModel& model);

BeliefTables belief_tables(const FiniteModel& model, const Observation& obs);

/// Tables built directly from marginal vectors (both normalized on entry).
/// Every prior entry must be positive.
BeliefTables tables_from_marginals(std::span<const double> marg_prior,
                                   std::span<const double> marg_post,
                                   std::vector<ParamPoint> psi = {});

/// Throws NonStochasticKernel when a kernel row fails to sum to one within 1e-10.
void check_kernel(const FutureKernel& kernel, std::size_t theta_count,
                  std::size_t x_count);

std::vector<double> prior_predictive(const FiniteModel& model, const FutureKernel& kernel);

PredictiveTables posterior_predictive(const FiniteModel& model,
                                      std::span<const double> posterior,
                                      const FutureKernel& kernel,
                                      const Observation& obs);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/model.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {
namespace {

constexpr double kSilentPriorDrift = 1e-9;
constexpr double kMaxPriorDrift = 1e-2;
constexpr double kStochasticTolerance = 1e-10;

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  fail(ErrorCode::Validation, field + ": " + msg);
}

}  // namespace

double FutureKernel::at(std::size_t theta, std::size_t x, std::size_t y) const {
  if (x_dependent) return values.at((theta * x_count + x) * y_count + y);
  return values.at(theta * y_count + y);
}

FiniteModel FiniteModel::create(ModelParts parts) {
  FiniteModel m;
  const std::size_t n_theta = parts.theta.size();
  if (n_theta == 0) invalid("theta", "support is empty");
  if (parts.prior.size() != n_theta) {
    invalid("prior", "has " + std::to_string(parts.prior.size()) +
                         " weights but theta has " + std::to_string(n_theta) + " points");
  }
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double w = parts.prior[i];
    if (!std::isfinite(w) || !(w > 0.0)) {
      invalid("prior", "weight " + std::to_string(i) + " is " + to_text(w) +
                           "; every prior weight must be positive");
    }
  }
  double total = 0.0;
  m.prior_ = normalized(parts.prior, &total);
  const double drift = std::abs(total - 1.0);
  // Keep an already-normalized prior bit for bit, so written models re-read identically.
  if (drift <= 1e-14) m.prior_ = parts.prior;
  if (drift > kMaxPriorDrift) {
    invalid("prior", "weights sum to " + to_text(total) + " (must be 1 within " +
                         to_text(kMaxPriorDrift) + ")");
  }
  if (drift > kSilentPriorDrift) {
    m.warnings_.push_back("prior: weights summed to " + to_text(total) + "; renormalized");
  }

  if (parts.density) {
    if (!parts.likelihood.empty()) {
      invalid("likelihood", "both a table and a density callback were given");
    }
    m.density_ = std::move(parts.density);
    m.x_count_ = 0;
  } else {
    if (parts.x_count == 0) invalid("likelihood", "sample space is empty");
    if (parts.likelihood.size() != n_theta * parts.x_count) {
      invalid("likelihood", "expected " + std::to_string(n_theta) + " x " +
                                std::to_string(parts.x_count) + " entries, got " +
                                std::to_string(parts.likelihood.size()));
    }
    for (double v : parts.likelihood) {
      if (!std::isfinite(v) || v < 0.0) invalid("likelihood", "entry " + to_text(v) + " is negative or not finite");
    }
    for (std::size_t x = 0; x < parts.x_count; ++x) {
      bool any = false;
      for (std::size_t t = 0; t < n_theta; ++t) any = any || parts.likelihood[t * parts.x_count + x] > 0.0;
      if (!any) invalid("likelihood", "column " + std::to_string(x) + " is zero under every theta");
    }
    m.likelihood_ = std::move(parts.likelihood);
    m.x_count_ = parts.x_count;
    if (parts.x_values.empty()) {
      m.x_values_.resize(m.x_count_);
      for (std::size_t x = 0; x < m.x_count_; ++x) m.x_values_[x] = static_cast<double>(x);
    } else if (parts.x_values.size() != m.x_count_) {
      invalid("x_values", "has " + std::to_string(parts.x_values.size()) +
                              " entries for a sample space of " + std::to_string(m.x_count_));
    } else {
      m.x_values_ = std::move(parts.x_values);
    }
  }

  if (parts.psi_map.empty()) {
    if (!parts.psi.empty() && parts.psi.size() != n_theta) {
      invalid("psi_map", "missing while psi support differs from theta");
    }
    parts.psi_map.resize(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i) parts.psi_map[i] = i;
    if (parts.psi.empty()) parts.psi = parts.theta;
  }
  if (parts.psi_map.size() != n_theta) {
    invalid("psi_map", "has " + std::to_string(parts.psi_map.size()) +
                           " entries but theta has " + std::to_string(n_theta));
  }
  if (parts.psi.empty()) invalid("psi_map", "psi support is empty");
  m.fibers_.assign(parts.psi.size(), {});
  for (std::size_t t = 0; t < n_theta; ++t) {
    const std::size_t j = parts.psi_map[t];
    if (j >= parts.psi.size()) invalid("psi_map", "entry " + std::to_string(t) + " is out of range");
    m.fibers_[j].push_back(t);
  }
  for (std::size_t j = 0; j < parts.psi.size(); ++j) {
    if (m.fibers_[j].empty()) {
      invalid("psi_map", "psi '" + parts.psi[j].label + "' has no preimage in theta");
    }
  }
  m.psi_map_ = std::move(parts.psi_map);
  m.psi_ = std::move(parts.psi);
  m.theta_ = std::move(parts.theta);

  m.marginal_prior_.assign(m.psi_.size(), 0.0);
  for (std::size_t j = 0; j < m.psi_.size(); ++j) {
    NeumaierSum s;
    for (std::size_t t : m.fibers_[j]) s += m.prior_[t];
    m.marginal_prior_[j] = s.value();
  }

  if (parts.future_kernel) {
    try {
      check_kernel(*parts.future_kernel, n_theta, m.x_count_);
    } catch (const Error& e) {
      invalid("future_kernel", e.what());
    }
    m.future_kernel_ = std::move(parts.future_kernel);
  }
  if (parts.truncation && parts.truncation->tail_mass_bound > 1e-9) {
    invalid("truncation", "tail mass bound " + to_text(parts.truncation->tail_mass_bound) +
                              " exceeds 1e-9");
  }
  m.truncation_ = parts.truncation;
  m.family_ = std::move(parts.family);
  if (m.density_) m.family_.kind = m.family_.kind == LikelihoodFamily::Kind::Table
                                       ? LikelihoodFamily::Kind::Callback
                                       : m.family_.kind;
  return m;
}

double FiniteModel::conditional_prior(std::size_t theta) const {
  return prior_.at(theta) / marginal_prior_.at(psi_of(theta));
}

double FiniteModel::likelihood(std::size_t theta, std::size_t x) const {
  if (density_) {
    fail(ErrorCode::InfiniteSampleSpace, "model has a density callback, not a table");
  }
  if (theta >= theta_.size() || x >= x_count_) {
    fail(ErrorCode::InvalidArgument, "likelihood index out of range");
  }
  return likelihood_[theta * x_count_ + x];
}

std::size_t FiniteModel::resolve_x(double value) const {
  for (std::size_t i = 0; i < x_values_.size(); ++i) {
    if (std::abs(x_values_[i] - value) <= 1e-9 * std::max(1.0, std::abs(value))) return i;
  }
  fail(ErrorCode::InvalidArgument, "x = " + to_text(value) + " is not in the sample space");
}

std::vector<double> FiniteModel::likelihood_column(const Observation& obs) const {
  std::vector<double> col(theta_.size());
  if (density_) {
    if (obs.index) {
      fail(ErrorCode::InvalidArgument, "density models take an observed value, not an index");
    }
    for (std::size_t t = 0; t < col.size(); ++t) {
      const double f = density_(t, obs.value);
      if (!std::isfinite(f) || f < 0.0) {
        fail(ErrorCode::InvalidArgument, "density callback returned " + to_text(f));
      }
      col[t] = f;
    }
    return col;
  }
  const std::size_t x = obs.index ? *obs.index : resolve_x(obs.value);
  if (x >= x_count_) fail(ErrorCode::InvalidArgument, "x index out of range");
  for (std::size_t t = 0; t < col.size(); ++t) col[t] = likelihood_[t * x_count_ + x];
  return col;
}

bool FiniteModel::rows_stochastic() const {
  if (density_) return false;
  for (std::size_t t = 0; t < theta_.size(); ++t) {
    const double s = stable_sum(std::span<const double>(likelihood_).subspan(t * x_count_, x_count_));
    if (std::abs(s - 1.0) > kStochasticTolerance) return false;
  }
  return true;
}

bool FiniteModel::same_as(const FiniteModel& o) const {
  return theta_ == o.theta_ && prior_ == o.prior_ && likelihood_ == o.likelihood_ &&
         x_count_ == o.x_count_ && x_values_ == o.x_values_ &&
         static_cast<bool>(density_) == static_cast<bool>(o.density_) &&
         family_ == o.family_ && psi_map_ == o.psi_map_ && psi_ == o.psi_ &&
         future_kernel_ == o.future_kernel_ && truncation_ == o.truncation_;
}

Posterior compute_posterior(const FiniteModel& model, const Observation& obs) {
  std::vector<double> joint = model.likelihood_column(obs);
  const auto prior = model.prior();
  for (std::size_t t = 0; t < joint.size(); ++t) joint[t] *= prior[t];
  const double evidence = stable_sum(joint);
  if (!(evidence > 0.0)) {
    fail(ErrorCode::ZeroEvidence, "observed data has zero probability under every theta");
  }
  Posterior post;
  post.probs = normalized(joint);
  post.evidence = evidence;
  return post;
}

BeliefTables marginalize(std::span<const double> posterior, const FiniteModel& model) {
  if (posterior.size() != model.theta_count()) {
    fail(ErrorCode::InvalidArgument, "posterior length does not match theta support");
  }
  BeliefTables tables;
  const std::size_t k = model.psi_count();
  tables.marg_prior.assign(model.marginal_prior().begin(), model.marginal_prior().end());
  tables.marg_post.assign(k, 0.0);
  tables.rb.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    NeumaierSum s;
    for (std::size_t t : model.fiber(j)) s += posterior[t];
    tables.marg_post[j] = s.value();
    tables.rb[j] = tables.marg_post[j] / tables.marg_prior[j];
  }
  tables.evidence = std::nan("");
  tables.psi = model.psi();
  tables.truncation = model.truncation();
  return tables;
}

BeliefTables belief_tables(const FiniteModel& model, const Observation& obs) {
  const Posterior post = compute_posterior(model, obs);
  BeliefTables tables = marginalize(post.probs, model);
  tables.evidence = post.evidence;
  tables.observation = obs;
  return tables;
}

BeliefTables tables_from_marginals(std::span<const double> marg_prior,
                                   std::span<const double> marg_post,
                                   std::vector<ParamPoint> psi) {
  if (marg_prior.size() != marg_post.size() || marg_prior.empty()) {
    fail(ErrorCode::InvalidArgument, "marginal vectors must be non-empty and aligned");
  }
  for (double p : marg_prior) {
    if (!(p > 0.0)) fail(ErrorCode::Validation, "marg_prior: every entry must be positive");
  }
  for (double p : marg_post) {
    if (!(p >= 0.0)) fail(ErrorCode::Validation, "marg_post: entries must be nonnegative");
  }
  BeliefTables t;
  t.marg_prior = normalized(marg_prior);
  t.marg_post = normalized(marg_post);
  t.rb.resize(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) t.rb[j] = t.marg_post[j] / t.marg_prior[j];
  t.evidence = std::nan("");
  if (psi.empty()) {
    psi.resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) psi[j].label = "psi" + std::to_string(j + 1);
  }
  if (psi.size() != t.size()) fail(ErrorCode::InvalidArgument, "psi labels misaligned");
  t.psi = std::move(psi);
  return t;
}

void check_kernel(const FutureKernel& kernel, std::size_t theta_count, std::size_t x_count) {
  if (kernel.y_count == 0) fail(ErrorCode::NonStochasticKernel, "kernel has no future values");
  const std::size_t rows = kernel.x_dependent ? theta_count * x_count : theta_count;
  if (kernel.x_dependent && x_count == 0) {
    fail(ErrorCode::InfiniteSampleSpace, "x-dependent kernel needs a tabulated sample space");
  }
  if (kernel.x_dependent && kernel.x_count != x_count) {
    fail(ErrorCode::NonStochasticKernel, "kernel sample space does not match the model");
  }
  if (kernel.values.size() != rows * kernel.y_count) {
    fail(ErrorCode::NonStochasticKernel, "kernel has " + std::to_string(kernel.values.size()) +
                                             " entries, expected " +
                                             std::to_string(rows * kernel.y_count));
  }
  if (!kernel.y_values.empty() && kernel.y_values.size() != kernel.y_count) {
    fail(ErrorCode::NonStochasticKernel, "y_values misaligned with kernel columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = std::span<const double>(kernel.values).subspan(r * kernel.y_count, kernel.y_count);
    for (double v : row) {
      if (!(v >= 0.0)) fail(ErrorCode::NonStochasticKernel, "kernel entry is negative");
    }
    const double s = stable_sum(row);
    if (std::abs(s - 1.0) > kStochasticTolerance) {
      fail(ErrorCode::NonStochasticKernel, "kernel row " + std::to_string(r) + " sums to " + to_text(s));
    }
  }
}

namespace {

std::vector<double> kernel_y_values(const FutureKernel& kernel) {
  if (!kernel.y_values.empty()) return kernel.y_values;
  std::vector<double> y(kernel.y_count);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i);
  return y;
}

}  // namespace

std::vector<double> prior_predictive(const FiniteModel& model, const FutureKernel& kernel) {
  check_kernel(kernel, model.theta_count(), model.x_count());
  const auto prior = model.prior();
  std::vector<NeumaierSum> acc(kernel.y_count);
  if (!kernel.x_dependent) {
    for (std::size_t t = 0; t < model.theta_count(); ++t) {
      for (std::size_t y = 0; y < kernel.y_count; ++y) acc[y] += prior[t] * kernel.at(t, 0, y);
    }
  } else {
    if (!model.rows_stochastic()) {
      fail(ErrorCode::InvalidArgument,
           "x-dependent kernels need likelihood rows that sum to one over the sample space");
    }
    for (std::size_t t = 0; t < model.theta_count(); ++t) {
      for (std::size_t x = 0; x < model.x_count(); ++x) {
        const double w = prior[t] * model.likelihood(t, x);
        for (std::size_t y = 0; y < kernel.y_count; ++y) acc[y] += w * kernel.at(t, x, y);
      }
    }
  }
  std::vector<double> q(kernel.y_count);
  for (std::size_t y = 0; y < q.size(); ++y) q[y] = acc[y].value();
  return normalized(q);
}

PredictiveTables posterior_predictive(const FiniteModel& model,
                                      std::span<const double> posterior,
                                      const FutureKernel& kernel,
                                      const Observation& obs) {
  PredictiveTables out;
  out.prior_pred = prior_predictive(model, kernel);
  std::size_t x = 0;
  if (kernel.x_dependent) x = obs.index ? *obs.index : model.resolve_x(obs.value);
  std::vector<NeumaierSum> acc(kernel.y_count);
  for (std::size_t t = 0; t < model.theta_count(); ++t) {
    for (std::size_t y = 0; y < kernel.y_count; ++y) acc[y] += posterior[t] * kernel.at(t, x, y);
  }
  std::vector<double> q(kernel.y_count);
  for (std::size_t y = 0; y < q.size(); ++y) q[y] = acc[y].value();
  out.post_pred = normalized(q);
  out.rb_pred.resize(kernel.y_count);
  for (std::size_t y = 0; y < kernel.y_count; ++y) {
    out.rb_pred[y] = out.prior_pred[y] > 0.0 ? out.post_pred[y] / out.prior_pred[y] : 0.0;
  }
  out.y_values = kernel_y_values(kernel);
  return out;
}

}  // namespace relbelief

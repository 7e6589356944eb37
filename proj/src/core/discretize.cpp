// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"
#include "core/estimators.hpp"
#include "core/numeric.hpp"
#include "core/quadrature.hpp"

namespace relbelief {
namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

void check_schedule(std::span<const double> lambdas) {
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "lambda schedule is empty");
  for (double l : lambdas) {
    if (!(l > 0.0)) fail(ErrorCode::InvalidArgument, "lambda values must be positive");
  }
}

double posterior_density_unnormalized(const ContinuousModel1D& m, double x, double psi) {
  return m.prior_density(psi) * m.likelihood(psi, x);
}

template <class Pick>
std::vector<ConvergenceRow> run_convergence(const ContinuousModel1D& model, double x,
                                            std::span<const double> lambdas, double target,
                                            Pick pick) {
  check_schedule(lambdas);
  const double finest = *std::min_element(lambdas.begin(), lambdas.end());
  check_lrse_hypotheses(build_grid(model, x, finest), 10.0 * finest);

  std::vector<ConvergenceRow> rows;
  for (double lambda : lambdas) {
    const DiscretizedModel d = build_grid(model, x, lambda);
    const BeliefTables tables = belief_tables(d.model, Observation::at_index(0));
    ConvergenceRow row;
    row.lambda = lambda;
    row.bins = d.grid.bins;
    const auto [bin, eta] = pick(d, tables);
    row.eta = eta;
    row.estimate = d.grid.representatives[bin];
    row.error = std::abs(row.estimate - target);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ContinuousModel1D normal_normal_testbed(double tau, double sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "tau and sigma must be positive");
  }
  ContinuousModel1D m;
  m.prior_density = [tau](double psi) { return normal_pdf(psi / tau) / tau; };
  m.likelihood = [sigma](double psi, double x) { return normal_pdf((x - psi) / sigma) / sigma; };
  m.lower = -8.0 * tau;
  m.upper = 8.0 * tau;
  m.name = "normal-normal";
  return m;
}

std::pair<double, double> RegularGrid::interval(std::size_t bin) const {
  const double lo = lower + lambda * static_cast<double>(bin);
  return {lo, lo + lambda};
}

std::size_t RegularGrid::bin_of(double psi) const {
  const double pos = std::floor((psi - lower) / lambda);
  if (pos < 0.0 || pos >= static_cast<double>(bins)) {
    fail(ErrorCode::InvalidArgument, "point lies outside the grid");
  }
  return static_cast<std::size_t>(pos);
}

DiscretizedModel build_grid(const ContinuousModel1D& model, double x, double lambda) {
  const double width = model.upper - model.lower;
  if (!(width > 0.0)) fail(ErrorCode::InvalidArgument, "support interval is empty");
  if (!(lambda > 0.0) || !(lambda <= width / 4.0 * (1.0 + 1e-12))) {
    fail(ErrorCode::InvalidArgument, "lambda must satisfy 0 < lambda <= (b - a) / 4");
  }
  RegularGrid grid;
  grid.lambda = lambda;
  grid.lower = model.lower;
  grid.bins = static_cast<std::size_t>(std::ceil(width / lambda - 1e-9));
  grid.representatives.resize(grid.bins);
  grid.bin_prior.resize(grid.bins);
  std::vector<double> joint(grid.bins);

  const auto prior = [&](double psi) { return model.prior_density(psi); };
  const auto post = [&](double psi) { return posterior_density_unnormalized(model, x, psi); };
  for (std::size_t j = 0; j < grid.bins; ++j) {
    const auto [lo, hi] = grid.interval(j);
    grid.representatives[j] = 0.5 * (lo + hi);
    // The prior lives on [lower, upper]; an overhanging last bin is integrated up to `upper`.
    const double top = std::min(hi, model.upper);
    grid.bin_prior[j] = integrate(prior, lo, top);
    if (!(grid.bin_prior[j] > 0.0)) {
      fail(ErrorCode::ZeroBinMass, "bin [" + to_text(lo) + ", " + to_text(hi) +
                                       "] has no prior mass");
    }
    joint[j] = integrate(post, lo, top);
  }
  const double prior_total = stable_sum(grid.bin_prior);
  if (prior_total < 1.0 - 1e-6 || prior_total > 1.0 + 1e-9) {
    fail(ErrorCode::Validation, "prior density integrates to " + to_text(prior_total) +
                                    " over the grid; expected 1 within 1e-6");
  }
  grid.bin_post = normalized(joint, &grid.evidence);

  ModelParts parts;
  parts.theta.resize(grid.bins);
  parts.likelihood.resize(grid.bins);
  for (std::size_t j = 0; j < grid.bins; ++j) {
    parts.theta[j] = {"bin" + std::to_string(j), {grid.representatives[j]}};
    // Bin-averaged likelihood, so that the finite posterior is Pi(B | x).
    parts.likelihood[j] = joint[j] / grid.bin_prior[j];
  }
  parts.prior = grid.bin_prior;
  parts.x_count = 1;
  parts.x_values = {x};
  return {FiniteModel::create(std::move(parts)), std::move(grid)};
}

double eta_schedule(const RegularGrid& grid, std::size_t lrse_bin) {
  return 0.5 * grid.bin_prior.at(lrse_bin);
}

void check_lrse_hypotheses(const DiscretizedModel& finest, double radius) {
  const BeliefTables t = belief_tables(finest.model, Observation::at_index(0));
  const EstimateResult best = lrse(t);
  if (best.tie) {
    fail(ErrorCode::HypothesisViolated,
         "relative belief ratio has " + std::to_string(best.argmax_set.size()) +
             " maximizers on the finest grid (first at " +
             to_text(finest.grid.representatives[best.argmax_set[0]]) + ", next at " +
             to_text(finest.grid.representatives[best.argmax_set[1]]) + ")");
  }
  const double center = finest.grid.representatives[best.psi_index];
  double outside = 0.0;
  double where = center;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (std::abs(finest.grid.representatives[j] - center) > radius && t.rb[j] > outside) {
      outside = t.rb[j];
      where = finest.grid.representatives[j];
    }
  }
  if (outside >= best.criterion_value * (1.0 - 1e-9)) {
    fail(ErrorCode::HypothesisViolated,
         "relative belief ratio at " + to_text(where) + " comes within 1e-9 of its maximum at " +
             to_text(center) + "; maximizer is not separated");
  }
}

std::vector<ConvergenceRow> capped_bayes_convergence(const ContinuousModel1D& model, double x,
                                                std::span<const double> lambdas, double target) {
  return run_convergence(model, x, lambdas, target,
                         [](const DiscretizedModel& d, const BeliefTables& t) {
                           const double eta = eta_schedule(d.grid, lrse(t).psi_index);
                           const auto r = bayes_rule(DiscretizedCapped{d.grid.lambda, eta}, t);
                           return std::pair{r.psi_index, eta};
                         });
}

std::vector<ConvergenceRow> lrse_convergence(const ContinuousModel1D& model, double x,
                                                  std::span<const double> lambdas, double target) {
  return run_convergence(model, x, lambdas, target, [](const DiscretizedModel&, const BeliefTables& t) {
    return std::pair{lrse(t).psi_index, std::numeric_limits<double>::quiet_NaN()};
  });
}

IntervalSet undiscretize(const RegularGrid& grid, std::span<const std::size_t> members) {
  std::vector<std::size_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  IntervalSet out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= grid.bins) fail(ErrorCode::InvalidArgument, "bin index out of range");
    const auto iv = grid.interval(sorted[i]);
    if (!out.empty() && i > 0 && sorted[i] == sorted[i - 1] + 1) {
      out.back().second = iv.second;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<std::size_t> rebin(const RegularGrid& grid, const IntervalSet& set) {
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < grid.bins; ++j) {
    const double mid = grid.representatives[j];
    for (const auto& [lo, hi] : set) {
      if (mid > lo && mid < hi) {
        members.push_back(j);
        break;
      }
    }
  }
  return members;
}

IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) {
  std::vector<double> cuts;
  for (const auto& [lo, hi] : a) cuts.insert(cuts.end(), {lo, hi});
  for (const auto& [lo, hi] : b) cuts.insert(cuts.end(), {lo, hi});
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto contains = [](const IntervalSet& s, double p) {
    return std::any_of(s.begin(), s.end(), [p](const auto& iv) { return p > iv.first && p < iv.second; });
  };
  IntervalSet out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (contains(a, mid) != contains(b, mid)) {
      if (!out.empty() && out.back().second == cuts[i]) {
        out.back().second = cuts[i + 1];
      } else {
        out.emplace_back(cuts[i], cuts[i + 1]);
      }
    }
  }
  return out;
}

double posterior_mass(const ContinuousModel1D& model, double x, const IntervalSet& set) {
  const auto post = [&](double psi) { return posterior_density_unnormalized(model, x, psi); };
  constexpr int kPanels = 64;
  const double step = (model.upper - model.lower) / kPanels;
  NeumaierSum evidence;
  for (int i = 0; i < kPanels; ++i) {
    evidence += integrate(post, model.lower + i * step, model.lower + (i + 1) * step);
  }
  NeumaierSum mass;
  for (const auto& [lo, hi] : set) {
    if (hi > lo) mass += integrate(post, lo, hi);
  }
  return mass.value() / evidence.value();
}

RegionConvergence region_convergence(const ContinuousModel1D& model, double x, double gamma,
                                          std::span<const double> lambdas,
                                          std::span<const double> etas) {
  check_schedule(lambdas);
  for (double eta : etas) {
    if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta values must be positive");
  }
  RegionConvergence out;
  out.gamma = gamma;
  out.reference_lambda = *std::min_element(lambdas.begin(), lambdas.end()) / 4.0;
  const DiscretizedModel ref = build_grid(model, x, out.reference_lambda);
  const BeliefTables ref_tables = belief_tables(ref.model, Observation::at_index(0));
  out.reference = undiscretize(ref.grid, rs_region(ref_tables, gamma).members);

  for (double lambda : lambdas) {
    const DiscretizedModel d = build_grid(model, x, lambda);
    const BeliefTables t = belief_tables(d.model, Observation::at_index(0));
    const CredibleRegion c = rs_region(t, gamma);
    out.rs_rows.push_back(
        {lambda, std::numeric_limits<double>::quiet_NaN(),
         posterior_mass(model, x, symmetric_difference(undiscretize(d.grid, c.members), out.reference)),
         c.attained_mass});
    for (double eta : etas) {
      const CredibleRegion l = lpl_region(DiscretizedCapped{lambda, eta}, t, gamma);
      out.lpl_rows.push_back(
          {lambda, eta,
           posterior_mass(model, x,
                          symmetric_difference(undiscretize(d.grid, l.members), out.reference)),
           l.attained_mass});
    }
  }
  return out;
}

}  // namespace relbelief

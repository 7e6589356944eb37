// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/losses.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_positive(std::string_view text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " must be a positive number, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> read_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open weights file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::replace_if(text.begin(), text.end(),
                  [](char c) { return c == ',' || c == '[' || c == ']'; }, ' ');
  std::istringstream is(text);
  std::vector<double> h;
  double v = 0.0;
  while (is >> v) h.push_back(v);
  if (!is.eof()) fail(ErrorCode::InvalidArgument, "weights file '" + path + "' has a non-numeric entry");
  return h;
}

double ball_mass(double lambda, std::size_t center, const BeliefTables& t) {
  const auto& c = t.psi.at(center).coord;
  if (c.empty()) fail(ErrorCode::InvalidArgument, "ball loss needs psi coordinates");
  NeumaierSum mass;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto& p = t.psi[j].coord;
    if (p.size() != c.size()) fail(ErrorCode::InvalidArgument, "psi coordinates have mixed dimension");
    double d2 = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) d2 += (p[k] - c[k]) * (p[k] - c[k]);
    if (std::sqrt(d2) <= lambda) mass += t.marg_post[j];
  }
  return mass.value();
}

double capped_risk(double eta, std::size_t candidate, const BeliefTables& t) {
  NeumaierSum total;
  for (std::size_t j = 0; j < t.size(); ++j) total += t.marg_post[j] / std::max(eta, t.marg_prior[j]);
  return total.value() - t.marg_post[candidate] / std::max(eta, t.marg_prior[candidate]);
}

}  // namespace

LossSpec parse_loss(std::string_view spec) {
  LossSpec loss;
  if (spec == "zero-one") {
    loss = ZeroOne{};
  } else if (spec == "prior-based") {
    loss = PriorBased{};
  } else if (spec.starts_with("capped:")) {
    loss = CappedPriorBased{parse_positive(spec.substr(7), "eta")};
  } else if (spec.starts_with("ball:")) {
    loss = BallIndicator{parse_positive(spec.substr(5), "lambda")};
  } else if (spec.starts_with("weighted:")) {
    loss = WeightedIndicator{read_weights(std::string(spec.substr(9)))};
  } else if (spec.starts_with("discretized:")) {
    const auto rest = spec.substr(12);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      fail(ErrorCode::InvalidArgument, "discretized loss needs 'discretized:<lambda>:<eta>'");
    }
    loss = DiscretizedCapped{parse_positive(rest.substr(0, colon), "lambda"),
                             parse_positive(rest.substr(colon + 1), "eta")};
  } else {
    fail(ErrorCode::InvalidArgument,
         "unknown loss '" + std::string(spec) +
             "' (expected zero-one | prior-based | capped:<eta> | ball:<lambda> | weighted:<file>)");
  }
  validate(loss);
  return loss;
}

std::string describe(const LossSpec& loss) {
  std::ostringstream os;
  os.precision(12);
  std::visit(Overloaded{
                 [&](const ZeroOne&) { os << "zero-one"; },
                 [&](const PriorBased&) { os << "prior-based"; },
                 [&](const CappedPriorBased& l) { os << "capped:" << l.eta; },
                 [&](const WeightedIndicator& l) { os << "weighted[" << l.h.size() << "]"; },
                 [&](const BallIndicator& l) { os << "ball:" << l.lambda; },
                 [&](const DiscretizedCapped& l) { os << "discretized:" << l.lambda << ":" << l.eta; },
             },
             loss);
  return os.str();
}

void validate(const LossSpec& loss) {
  std::visit(Overloaded{
                 [](const ZeroOne&) {},
                 [](const PriorBased&) {},
                 [](const CappedPriorBased& l) {
                   if (!(l.eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
                 },
                 [](const WeightedIndicator& l) {
                   for (double h : l.h) {
                     if (!(h >= 0.0) || !std::isfinite(h)) {
                       fail(ErrorCode::InvalidArgument, "weights must be finite and nonnegative");
                     }
                   }
                 },
                 [](const BallIndicator& l) {
                   if (!(l.lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be positive");
                 },
                 [](const DiscretizedCapped& l) {
                   if (!(l.eta > 0.0) || !(l.lambda > 0.0)) {
                     fail(ErrorCode::InvalidArgument, "lambda and eta must be positive");
                   }
                 },
             },
             loss);
}

double posterior_risk(const LossSpec& loss, std::size_t candidate, const BeliefTables& t) {
  if (candidate >= t.size()) {
    fail(ErrorCode::UnknownPsi, "candidate " + std::to_string(candidate) + " is not in the psi support");
  }
  return std::visit(
      Overloaded{
          [&](const ZeroOne&) { return 1.0 - t.marg_post[candidate]; },
          [&](const PriorBased&) { return stable_sum(t.rb) - t.rb[candidate]; },
          [&](const CappedPriorBased& l) { return capped_risk(l.eta, candidate, t); },
          [&](const DiscretizedCapped& l) { return capped_risk(l.eta, candidate, t); },
          [&](const WeightedIndicator& l) {
            if (l.h.size() != t.size()) {
              fail(ErrorCode::InvalidArgument, "weights length does not match psi support");
            }
            NeumaierSum s;
            for (std::size_t j = 0; j < t.size(); ++j) s += l.h[j] * t.marg_post[j];
            return s.value() - l.h[candidate] * t.marg_post[candidate];
          },
          [&](const BallIndicator& l) { return 1.0 - ball_mass(l.lambda, candidate, t); },
      },
      loss);
}

std::vector<double> posterior_risks(const LossSpec& loss, const BeliefTables& tables) {
  std::vector<double> r(tables.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = posterior_risk(loss, j, tables);
  return r;
}

double loss_value(const LossSpec& loss, std::size_t theta, std::size_t psi,
                  const FiniteModel& model) {
  if (psi >= model.psi_count()) fail(ErrorCode::UnknownPsi, "psi index out of range");
  const std::size_t truth = model.psi_of(theta);
  const double prior_mass = model.marginal_prior()[truth];
  return std::visit(
      Overloaded{
          [&](const ZeroOne&) { return truth != psi ? 1.0 : 0.0; },
          [&](const PriorBased&) { return truth != psi ? 1.0 / prior_mass : 0.0; },
          [&](const CappedPriorBased& l) {
            return truth != psi ? 1.0 / std::max(l.eta, prior_mass) : 0.0;
          },
          [&](const DiscretizedCapped& l) {
            return truth != psi ? 1.0 / std::max(l.eta, prior_mass) : 0.0;
          },
          [&](const WeightedIndicator& l) {
            if (l.h.size() != model.psi_count()) {
              fail(ErrorCode::InvalidArgument, "weights length does not match psi support");
            }
            return truth != psi ? l.h[truth] : 0.0;
          },
          [&](const BallIndicator& l) {
            const auto& a = model.psi()[truth].coord;
            const auto& b = model.psi()[psi].coord;
            if (a.empty() || a.size() != b.size()) {
              fail(ErrorCode::InvalidArgument, "ball loss needs psi coordinates");
            }
            double d2 = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
            return std::sqrt(d2) <= l.lambda ? 0.0 : 1.0;
          },
      },
      loss);
}

std::vector<double> conditional_prior_predictive(const FiniteModel& model) {
  if (!model.has_table()) {
    fail(ErrorCode::InfiniteSampleSpace, "M_psi needs a tabulated sample space");
  }
  const std::size_t nx = model.x_count();
  std::vector<double> m(model.psi_count() * nx, 0.0);
  for (std::size_t j = 0; j < model.psi_count(); ++j) {
    for (std::size_t x = 0; x < nx; ++x) {
      NeumaierSum s;
      for (std::size_t t : model.fiber(j)) s += model.likelihood(t, x) * model.conditional_prior(t);
      m[j * nx + x] = s.value();
    }
  }
  return m;
}

RiskReport prior_risk(const LossSpec& loss, const DecisionRule& rule, const FiniteModel& model,
                      unsigned workers) {
  if (!model.has_table()) {
    fail(ErrorCode::InfiniteSampleSpace, "prior risk needs a tabulated sample space");
  }
  const std::size_t nx = model.x_count();
  const std::size_t k = model.psi_count();
  if (rule.size() != nx) fail(ErrorCode::InvalidArgument, "decision rule is not total on the sample space");
  for (std::size_t d : rule) {
    if (d >= k) fail(ErrorCode::UnknownPsi, "decision rule maps to an unknown psi");
  }
  if (!model.rows_stochastic()) {
    fail(ErrorCode::InvalidArgument, "prior risk needs likelihood rows that sum to one");
  }
  validate(loss);

  const std::vector<double> mpsi = conditional_prior_predictive(model);
  const auto prior = model.prior();

  // Per-chunk partial sums: per-class errors, the loss integral and E_M rb.
  struct Partial {
    std::vector<NeumaierSum> errors;
    NeumaierSum risk;
    NeumaierSum expected_rb;
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(nx)));
  std::vector<Partial> partials(workers);
  const bool prior_based = std::holds_alternative<PriorBased>(loss);

  auto run = [&](unsigned w) {
    Partial& p = partials[w];
    p.errors.assign(k, NeumaierSum{});
    const std::size_t lo = nx * w / workers;
    const std::size_t hi = nx * (w + 1) / workers;
    for (std::size_t x = lo; x < hi; ++x) {
      const std::size_t d = rule[x];
      for (std::size_t j = 0; j < k; ++j) {
        if (d != j) p.errors[j] += mpsi[j * nx + x];
      }
      for (std::size_t t = 0; t < model.theta_count(); ++t) {
        const double joint = prior[t] * model.likelihood(t, x);
        if (joint > 0.0) p.risk += joint * loss_value(loss, t, d, model);
      }
      if (prior_based) {
        NeumaierSum m;
        for (std::size_t t = 0; t < model.theta_count(); ++t) m += prior[t] * model.likelihood(t, x);
        if (m.value() > 0.0) {
          const BeliefTables tab = belief_tables(model, Observation::at_index(x));
          p.expected_rb += m.value() * tab.rb[d];
        }
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  Partial total;
  total.errors.assign(k, NeumaierSum{});
  for (const Partial& p : partials) {
    for (std::size_t j = 0; j < k; ++j) total.errors[j].merge(p.errors[j]);
    total.risk.merge(p.risk);
    total.expected_rb.merge(p.expected_rb);
  }

  RiskReport report;
  report.per_class_error.resize(k);
  NeumaierSum unweighted, weighted;
  for (std::size_t j = 0; j < k; ++j) {
    const double e = std::clamp(total.errors[j].value(), 0.0, 1.0);
    report.per_class_error[j] = e;
    unweighted += e;
    weighted += e * model.marginal_prior()[j];
  }
  report.unweighted_sum = unweighted.value();
  report.prior_weighted_sum = weighted.value();
  report.prior_risk = total.risk.value();
  if (prior_based) {
    report.identity_residual =
        std::abs(report.prior_risk - (static_cast<double>(k) - total.expected_rb.value()));
  }
  return report;
}

}  // namespace relbelief

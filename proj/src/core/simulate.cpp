// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/simulate.hpp"

#include <algorithm>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <cstdio>
#include <thread>

#include "core/error.hpp"
#include "core/random.hpp"
#include "core/worked_models.hpp"

namespace relbelief {
namespace {

struct CellCounts {
  std::uint64_t map = 0;
  std::uint64_t lrse = 0;
};

CellCounts run_range(const SimConfig& cfg, int c, std::uint64_t begin, std::uint64_t end) {
  const std::uint64_t key = stream_key(cfg.seed, cfg.beta, c);
  const bool conditional = cfg.protocol == SimProtocol::ConjugateConditional;
  boost::random::beta_distribution<double> eps_law(conditional ? cfg.alpha + c : cfg.alpha,
                                                   conditional ? cfg.beta + 1 - c : cfg.beta);
  boost::random::normal_distribution<double> noise(c * cfg.mu, 1.0);
  BetaBernoulliPredictor pred{cfg.alpha, cfg.beta, cfg.n, 0.0, 1.0};

  CellCounts out;
  for (std::uint64_t r = begin; r < end; ++r) {
    Philox4x32 gen(key, r);
    // No cached state may leak from one replication into the next.
    eps_law.reset();
    noise.reset();
    const double eps = eps_law(gen);
    int k = 0;
    if (cfg.n > 0) k = boost::random::binomial_distribution<int, double>(cfg.n, eps)(gen);
    const double x = noise(gen);
    pred.cbar = cfg.n > 0 ? static_cast<double>(k) / cfg.n : 0.0;
    pred.f_ratio = f_ratio_gaussian(x, cfg.mu);
    if (predict_class(pred, RuleKind::Map) != c) ++out.map;
    if (predict_class(pred, RuleKind::Lrse) != c) ++out.lrse;
  }
  return out;
}

CellCounts run_cell(const SimConfig& cfg, int c) {
  const std::uint64_t workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.threads, cfg.reps));
  std::vector<CellCounts> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = cfg.reps * w / workers;
      const std::uint64_t end = cfg.reps * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = run_range(cfg, c, begin, end); });
    }
  }
  CellCounts total;
  for (const auto& p : partial) {
    total.map += p.map;
    total.lrse += p.lrse;
  }
  return total;
}

double smoothed_se(std::uint64_t errors, std::uint64_t reps) {
  const double p = (static_cast<double>(errors) + 1.0) / (static_cast<double>(reps) + 2.0);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

}  // namespace

SimProtocol parse_protocol(std::string_view name) {
  if (name == "prior") return SimProtocol::PriorDrawn;
  if (name == "conditional") return SimProtocol::ConjugateConditional;
  fail(ErrorCode::InvalidArgument,
       "unknown protocol '" + std::string(name) + "' (expected prior or conditional)");
}

const char* protocol_name(SimProtocol p) noexcept {
  return p == SimProtocol::PriorDrawn ? "prior" : "conditional";
}

void validate(const SimConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0)) fail(ErrorCode::InvalidArgument, "alpha and beta must be positive");
  if (!std::isfinite(cfg.mu)) fail(ErrorCode::InvalidArgument, "mu must be finite");
  if (cfg.n < 0) fail(ErrorCode::InvalidArgument, "n must be nonnegative");
  if (cfg.reps < 1) fail(ErrorCode::InvalidArgument, "reps must be at least 1");
}

SimCounts simulate_counts(const SimConfig& cfg) {
  validate(cfg);
  SimCounts out;
  out.reps = cfg.reps;
  for (int c = 0; c <= 1; ++c) {
    const CellCounts cell = run_cell(cfg, c);
    out.map_errors[c] = cell.map;
    out.lrse_errors[c] = cell.lrse;
  }
  return out;
}

MethodRisk method_risk(const SimCounts& counts, RuleKind method) {
  const std::uint64_t* errors = method == RuleKind::Map ? counts.map_errors : counts.lrse_errors;
  const double reps = static_cast<double>(counts.reps);
  MethodRisk r;
  r.method = method;
  r.errors0 = errors[0];
  r.errors1 = errors[1];
  r.m0 = static_cast<double>(errors[0]) / reps;
  r.m1 = static_cast<double>(errors[1]) / reps;
  r.sum = r.m0 + r.m1;
  r.se0 = smoothed_se(errors[0], counts.reps);
  r.se1 = smoothed_se(errors[1], counts.reps);
  r.se_sum = std::hypot(r.se0, r.se1);
  return r;
}

std::vector<MethodRisk> conditional_risk_mc(const SimConfig& cfg) {
  const SimCounts counts = simulate_counts(cfg);
  return {method_risk(counts, RuleKind::Map), method_risk(counts, RuleKind::Lrse)};
}

RiskReport to_risk_report(const MethodRisk& risk) {
  RiskReport r;
  r.per_class_error = {risk.m0, risk.m1};
  r.unweighted_sum = risk.sum;
  r.prior_risk = risk.sum;
  return r;
}

std::vector<ClassificationRow> classification_table(const SimConfig& base, const std::vector<double>& betas) {
  if (betas.empty()) fail(ErrorCode::InvalidArgument, "beta list is empty");
  std::vector<ClassificationRow> rows;
  for (double beta : betas) {
    SimConfig cfg = base;
    cfg.beta = beta;
    const auto risks = conditional_risk_mc(cfg);
    rows.push_back({beta, risks[0], risks[1]});
  }
  return rows;
}

std::string format_classification_table(const std::vector<ClassificationRow>& rows, const SimConfig& base) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "alpha = %g, n = %d, mu = %g, reps = %llu, protocol = %s\n",
                base.alpha, base.n, base.mu, static_cast<unsigned long long>(base.reps),
                protocol_name(base.protocol));
  out += line;
  std::snprintf(line, sizeof line, "%8s  %-26s  %-26s\n", "beta", "MAP  M0 + M1 = sum (se)",
                "LRSE  M0 + M1 = sum (se)");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "%8g  %.3f + %.3f = %.3f (%.3f)  %.3f + %.3f = %.3f (%.3f)\n", r.beta, r.map.m0,
                  r.map.m1, r.map.sum, r.map.se_sum, r.lrse.m0, r.lrse.m1, r.lrse.sum,
                  r.lrse.se_sum);
    out += line;
  }
  return out;
}

}  // namespace relbelief

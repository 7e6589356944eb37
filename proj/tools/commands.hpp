// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relbelief.h"
#include "report.hpp"

namespace rbcli {

/// Carries the process exit code: 2 for bad input, 1 for everything else.
class Failure : public std::runtime_error {
 public:
  Failure(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Throws Failure for a non-OK status, with the library's message.
void check(rb_status status);

struct ValidateOptions {
  std::string model;
  std::string write;
};

struct ObservationOptions {
  std::string model;
  std::optional<double> x;
  std::optional<std::size_t> x_index;
};

struct EstimateOptions {
  ObservationOptions obs;
  std::string estimator = "lrse";
  std::string loss = "prior-based";
};

struct RegionOptions {
  ObservationOptions obs;
  std::string family = "rs";
  double gamma = 0.9;
  std::string loss = "prior-based";
  // "eta=<list>" or a bare comma-separated list.
  std::string sweep;
};

struct ClassifyOptions {
  double psi1 = 0.05;
  double psi2 = 0.80;
  double epsilon = 0.05;
  std::optional<int> x;
  std::string method = "both";
};

struct PredictOptions {
  std::string kind = "class";
  std::string method = "both";
  // class
  double alpha = 1.0;
  double beta = 1.0;
  int n = 0;
  double cbar = 0.0;
  double mu = 1.0;
  std::optional<double> x_new;
  std::optional<double> f_ratio;
  // regression
  std::string design;
  std::string X;
  std::vector<double> y;
  std::vector<double> w;
  double sigma2 = 1.0;
  double tau2 = 1.0;
};

struct SimulateOptions {
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 0;
  double mu = 1.0;
  int n = 10;
  std::vector<double> alphas{1.0};
  std::vector<double> betas{1.0, 14.0, 32.0, 100.0};
  std::string protocol = "prior";
  unsigned threads = 1;
};

struct ConvergeOptions {
  std::string testbed = "normal-normal";
  double tau = 1.0;
  double sigma = 1.0;
  double x = 1.0;
  std::vector<double> lambdas{0.2, 0.1, 0.05, 0.025};
  double gamma = 0.9;
  std::vector<double> etas{1e-2, 1e-3, 1e-4, 1e-5};
};

// Each command prints its human-readable result to stdout and returns the
// tables for the CSV/JSON artifacts.
Report run_validate(const ValidateOptions& o);
Report run_estimate(const EstimateOptions& o);
Report run_region(const RegionOptions& o);
Report run_classify(const ClassifyOptions& o);
Report run_predict(const PredictOptions& o);
Report run_simulate(const SimulateOptions& o);
Report run_converge(const ConvergeOptions& o);

extern const char* const kModelSchema;

}  // namespace rbcli

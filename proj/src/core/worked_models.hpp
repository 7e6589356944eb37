// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "core/estimators.hpp"
#include "core/losses.hpp"
#include "core/model.hpp"

namespace relbelief {

/// Two candidate success probabilities for a single Bernoulli trial, with prior
/// mass `epsilon` on psi2.
struct BinomialClassifier {
  double psi1 = 0.0;
  double psi2 = 0.0;
  double epsilon = 0.0;
};

struct ClassifyResult {
  std::size_t psi_index = 0;  // 0 for psi1, 1 for psi2
  bool tie = false;
};

void validate(const BinomialClassifier& model);
/// Closed-form decision. On a tie the lower index is returned with `tie` set,
/// as the generic estimators do.
ClassifyResult classify(const BinomialClassifier& model, int x, RuleKind method);
FiniteModel to_finite_model(const BinomialClassifier& model);
/// Exact M_psi1 and M_psi2 error probabilities of the closed-form rule.
RiskReport classifier_risks(const BinomialClassifier& model, RuleKind method);

/// y = X beta + e with e ~ N(0, sigma2 I), beta ~ N(0, tau2 I); psi = w' beta.
struct GaussianRegression {
  Eigen::MatrixXd X;
  double sigma2 = 1.0;
  double tau2 = 1.0;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
};

struct RegressionEstimates {
  Eigen::VectorXd b;  // least squares
  Eigen::VectorXd mu_post_beta;
  Eigen::MatrixXd sigma_post_beta;
  double mu_post_psi = 0.0;
  double var_prior_psi = 0.0;
  double var_post_psi = 0.0;
  double psi_map = 0.0;
  double psi_lrse = 0.0;
};

struct RegressionPrediction {
  double mu_post_z = 0.0;
  double var_prior_z = 0.0;
  double var_post_z = 0.0;
  double z_map = 0.0;
  double z_lrse = 0.0;
};

/// Throws SingularDesign unless X has full column rank.
RegressionEstimates regression_estimates(const GaussianRegression& model);
/// Future z = w' beta + e.
RegressionPrediction regression_predict(const GaussianRegression& model);

/// Beta(alpha, beta) prior on the class-1 probability, n past labels with mean
/// cbar, and the feature likelihood ratio f1/f0 at the new point.
struct BetaBernoulliPredictor {
  double alpha = 1.0;
  double beta = 1.0;
  int n = 0;
  double cbar = 0.0;
  double f_ratio = 1.0;
};

void validate(const BetaBernoulliPredictor& model);
/// 1 when the class-1 criterion reaches its threshold (>= 1), else 0.
int predict_class(const BetaBernoulliPredictor& model, RuleKind method);

/// f1(x)/f0(x) for f_c = N(c mu, 1).
double f_ratio_gaussian(double x, double mu);
/// Smallest x at which predict_class returns 1 under Gaussian features, mu > 0.
double class_threshold_x(double alpha, double beta, int n, double cbar, double mu, RuleKind method);

}  // namespace relbelief

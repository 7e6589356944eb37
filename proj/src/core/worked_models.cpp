// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/worked_models.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {
namespace {

double bernoulli(double p, int x) { return x == 1 ? p : 1.0 - p; }

// Decides between two nonnegative scores for psi1 and psi2.
ClassifyResult pick(double first, double second) {
  const double lead = std::max(first, second);
  if (is_tie(lead, std::min(first, second))) return {0, true};
  return {first > second ? 0u : 1u, false};
}

// Log of the class-1 odds factor that f_ratio has to overcome.
double log_threshold(double alpha, double beta, int n, double cbar, RuleKind method) {
  const double a = alpha + n * cbar;
  const double b = beta + n * (1.0 - cbar);
  return method == RuleKind::Map ? std::log(b / a) : std::log(alpha * b / (beta * a));
}

}  // namespace

void validate(const BinomialClassifier& m) {
  if (!(m.psi1 >= 0.0 && m.psi1 <= 1.0) || !(m.psi2 >= 0.0 && m.psi2 <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "psi1 and psi2 must lie in [0, 1]");
  }
  if (!(m.epsilon > 0.0 && m.epsilon < 1.0)) {
    fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  }
}

ClassifyResult classify(const BinomialClassifier& m, int x, RuleKind method) {
  validate(m);
  if (x != 0 && x != 1) fail(ErrorCode::InvalidArgument, "x must be 0 or 1");
  const double f1 = bernoulli(m.psi1, x);
  const double f2 = bernoulli(m.psi2, x);
  if (method == RuleKind::Lrse) return pick(f1, f2);
  return pick((1.0 - m.epsilon) * f1, m.epsilon * f2);
}

FiniteModel to_finite_model(const BinomialClassifier& m) {
  validate(m);
  ModelParts parts;
  parts.theta = {{"psi1", {m.psi1}}, {"psi2", {m.psi2}}};
  parts.prior = {1.0 - m.epsilon, m.epsilon};
  parts.x_count = 2;
  parts.likelihood = {1.0 - m.psi1, m.psi1, 1.0 - m.psi2, m.psi2};
  parts.family.kind = LikelihoodFamily::Kind::Bernoulli;
  parts.family.p = {m.psi1, m.psi2};
  return FiniteModel::create(std::move(parts));
}

RiskReport classifier_risks(const BinomialClassifier& m, RuleKind method) {
  validate(m);
  const double psi[2] = {m.psi1, m.psi2};
  RiskReport r;
  r.per_class_error.assign(2, 0.0);
  for (int x = 0; x <= 1; ++x) {
    const std::size_t d = classify(m, x, method).psi_index;
    for (std::size_t c = 0; c < 2; ++c) {
      if (d != c) r.per_class_error[c] += bernoulli(psi[c], x);
    }
  }
  r.unweighted_sum = r.per_class_error[0] + r.per_class_error[1];
  r.prior_weighted_sum = (1.0 - m.epsilon) * r.per_class_error[0] + m.epsilon * r.per_class_error[1];
  r.prior_risk = r.prior_weighted_sum;
  return r;
}

RegressionEstimates regression_estimates(const GaussianRegression& m) {
  const auto k = m.X.cols();
  if (m.X.rows() == 0 || k == 0) fail(ErrorCode::InvalidArgument, "design matrix is empty");
  if (m.y.size() != m.X.rows()) fail(ErrorCode::InvalidArgument, "y length differs from the rows of X");
  if (m.w.size() != k) fail(ErrorCode::InvalidArgument, "w length differs from the columns of X");
  if (!(m.sigma2 > 0.0) || !(m.tau2 > 0.0)) fail(ErrorCode::InvalidArgument, "sigma2 and tau2 must be positive");
  if (m.w.squaredNorm() == 0.0) fail(ErrorCode::InvalidArgument, "w must be nonzero");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.X);
  if (qr.rank() < k) {
    fail(ErrorCode::SingularDesign, "design matrix has rank " + std::to_string(qr.rank()) +
                                        " < " + std::to_string(k) + " columns");
  }
  RegressionEstimates e;
  e.b = qr.solve(m.y);

  const Eigen::MatrixXd xtx = m.X.transpose() * m.X;
  const Eigen::MatrixXd precision =
      Eigen::MatrixXd::Identity(k, k) / m.tau2 + xtx / m.sigma2;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(precision);
  e.sigma_post_beta = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  e.mu_post_beta = ldlt.solve(m.X.transpose() * m.y / m.sigma2);

  e.mu_post_psi = m.w.dot(e.mu_post_beta);
  e.var_prior_psi = m.tau2 * m.w.squaredNorm();
  e.var_post_psi = m.w.dot(e.sigma_post_beta * m.w);
  const double shrink = e.var_prior_psi - e.var_post_psi;
  if (!(shrink > 0.0)) {
    fail(ErrorCode::HypothesisViolated, "posterior variance of psi is not below its prior variance");
  }
  e.psi_map = e.mu_post_psi;
  e.psi_lrse = e.mu_post_psi * e.var_prior_psi / shrink;
  return e;
}

RegressionPrediction regression_predict(const GaussianRegression& m) {
  const RegressionEstimates e = regression_estimates(m);
  RegressionPrediction p;
  p.mu_post_z = e.mu_post_psi;
  p.var_prior_z = m.sigma2 + e.var_prior_psi;
  p.var_post_z = m.sigma2 + e.var_post_psi;
  p.z_map = p.mu_post_z;
  // The difference of the z variances equals that of the psi variances; using
  // the latter avoids cancelling sigma2.
  p.z_lrse = p.mu_post_z * p.var_prior_z / (e.var_prior_psi - e.var_post_psi);
  return p;
}

void validate(const BetaBernoulliPredictor& m) {
  if (!(m.alpha > 0.0) || !(m.beta > 0.0)) fail(ErrorCode::InvalidArgument, "alpha and beta must be positive");
  if (m.n < 0) fail(ErrorCode::InvalidArgument, "n must be nonnegative");
  if (!(m.cbar >= 0.0 && m.cbar <= 1.0)) fail(ErrorCode::InvalidArgument, "cbar must lie in [0, 1]");
  if (!(m.f_ratio > 0.0) || !std::isfinite(m.f_ratio)) {
    fail(ErrorCode::InvalidArgument, "f_ratio must be positive and finite");
  }
}

int predict_class(const BetaBernoulliPredictor& m, RuleKind method) {
  validate(m);
  const double a = m.alpha + m.n * m.cbar;
  const double b = m.beta + m.n * (1.0 - m.cbar);
  if (method == RuleKind::Map) return m.f_ratio * a >= b ? 1 : 0;
  return m.f_ratio * m.beta * a >= m.alpha * b ? 1 : 0;
}

double f_ratio_gaussian(double x, double mu) { return std::exp(mu * x - 0.5 * mu * mu); }

double class_threshold_x(double alpha, double beta, int n, double cbar, double mu, RuleKind method) {
  validate(BetaBernoulliPredictor{alpha, beta, n, cbar, 1.0});
  if (!(mu > 0.0)) fail(ErrorCode::InvalidArgument, "mu must be positive for a threshold in x");
  return log_threshold(alpha, beta, n, cbar, method) / mu + 0.5 * mu;
}

}  // namespace relbelief

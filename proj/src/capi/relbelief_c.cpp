// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "relbelief.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/countable.hpp"
#include "core/discretize.hpp"
#include "core/error.hpp"
#include "core/estimators.hpp"
#include "core/losses.hpp"
#include "core/model.hpp"
#include "core/model_io.hpp"
#include "core/regions.hpp"
#include "core/simulate.hpp"
#include "core/worked_models.hpp"

namespace rb = relbelief;

struct rb_model {
  rb::FiniteModel model;
};

struct rb_tables {
  rb::BeliefTables tables;
};

struct rb_loss {
  rb::LossSpec spec;
  std::string description;
};

struct rb_region {
  rb::CredibleRegion region;
};

struct rb_sweep {
  rb::EtaSweepReport report;
  std::vector<rb_region> entries;
  rb_region reference;
  rb_region reference_next;
};

struct rb_convergence {
  double target = 0.0;
  std::vector<rb::ConvergenceRow> bayes;
  std::vector<rb::ConvergenceRow> lrse;
  rb::RegionConvergence regions;
};

namespace {

thread_local std::string last_error;

rb_status to_status(rb::ErrorCode code) {
  switch (code) {
    case rb::ErrorCode::InvalidArgument: return RB_ERR_INVALID_ARGUMENT;
    case rb::ErrorCode::Validation: return RB_ERR_VALIDATION;
    case rb::ErrorCode::ZeroEvidence: return RB_ERR_ZERO_EVIDENCE;
    case rb::ErrorCode::UnknownPsi: return RB_ERR_UNKNOWN_PSI;
    case rb::ErrorCode::InfiniteSampleSpace: return RB_ERR_INFINITE_SAMPLE_SPACE;
    case rb::ErrorCode::NonStochasticKernel: return RB_ERR_NON_STOCHASTIC_KERNEL;
    case rb::ErrorCode::QuadratureFailure: return RB_ERR_QUADRATURE_FAILURE;
    case rb::ErrorCode::ZeroBinMass: return RB_ERR_ZERO_BIN_MASS;
    case rb::ErrorCode::HypothesisViolated: return RB_ERR_HYPOTHESIS_VIOLATED;
    case rb::ErrorCode::TooLargeForBruteForce: return RB_ERR_TOO_LARGE_FOR_BRUTE_FORCE;
    case rb::ErrorCode::SingularDesign: return RB_ERR_SINGULAR_DESIGN;
    case rb::ErrorCode::NotAttainable: return RB_ERR_NOT_ATTAINABLE;
    case rb::ErrorCode::TablesMismatch: return RB_ERR_TABLES_MISMATCH;
    case rb::ErrorCode::Io: return RB_ERR_IO;
  }
  return RB_ERR_INTERNAL;
}

rb_status set_error(rb_status status, std::string msg) {
  last_error = std::move(msg);
  return status;
}

template <class F>
rb_status guarded(F&& body) noexcept {
  try {
    body();
    return RB_OK;
  } catch (const rb::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RB_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(RB_ERR_INTERNAL, "unknown failure");
  }
}

#define RB_REQUIRE(ptr)                                                  \
  do {                                                                   \
    if ((ptr) == nullptr) {                                              \
      return set_error(RB_ERR_NULL_ARGUMENT, #ptr " must not be NULL"); \
    }                                                                    \
  } while (0)

rb::RuleKind to_kind(rb_method m) { return m == RB_METHOD_MAP ? rb::RuleKind::Map : rb::RuleKind::Lrse; }

void fill(const rb::EstimateResult& r, rb_estimate* out) {
  out->psi_index = r.psi_index;
  out->criterion_value = r.criterion_value;
  out->tie = r.tie ? 1 : 0;
  out->optimal_count = r.argmax_set.size();
}

rb::DecisionRule tabulate(rb_rule rule, const rb::LossSpec& loss, const rb::FiniteModel& model) {
  switch (rule) {
    case RB_RULE_LRSE: return rb::tabulate_rule(rb::RuleKind::Lrse, model);
    case RB_RULE_MAP: return rb::tabulate_rule(rb::RuleKind::Map, model);
    case RB_RULE_BAYES: return rb::tabulate_bayes_rule(loss, model);
  }
  rb::fail(rb::ErrorCode::InvalidArgument, "unknown rule");
}

rb::GaussianRegression to_regression(const double* X, size_t n, size_t k, const double* y,
                                     const double* w, double sigma2, double tau2) {
  rb::GaussianRegression m;
  m.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) m.X(i, j) = X[i * k + j];
  }
  m.y = Eigen::Map<const Eigen::VectorXd>(y, static_cast<Eigen::Index>(n));
  m.w = Eigen::Map<const Eigen::VectorXd>(w, static_cast<Eigen::Index>(k));
  m.sigma2 = sigma2;
  m.tau2 = tau2;
  return m;
}

rb::SimConfig to_config(const rb_sim_config& c) {
  rb::SimConfig cfg;
  cfg.alpha = c.alpha;
  cfg.beta = c.beta;
  cfg.mu = c.mu;
  cfg.n = c.n;
  cfg.reps = c.reps;
  cfg.seed = c.seed;
  cfg.protocol = c.protocol == RB_PROTOCOL_CONDITIONAL ? rb::SimProtocol::ConjugateConditional
                                                       : rb::SimProtocol::PriorDrawn;
  cfg.threads = c.threads == 0 ? 1 : c.threads;
  return cfg;
}

void fill(const rb::MethodRisk& r, rb_method_risk* out) {
  *out = {r.m0, r.m1, r.sum, r.se0, r.se1, r.se_sum, r.errors0, r.errors1};
}

}  // namespace

extern "C" {

const char* rb_version(void) { return "0.1.0"; }

const char* rb_status_name(rb_status status) {
  switch (status) {
    case RB_OK: return "ok";
    case RB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case RB_ERR_VALIDATION: return "validation";
    case RB_ERR_ZERO_EVIDENCE: return "zero-evidence";
    case RB_ERR_UNKNOWN_PSI: return "unknown-psi";
    case RB_ERR_INFINITE_SAMPLE_SPACE: return "infinite-sample-space";
    case RB_ERR_NON_STOCHASTIC_KERNEL: return "non-stochastic-kernel";
    case RB_ERR_QUADRATURE_FAILURE: return "quadrature-failure";
    case RB_ERR_ZERO_BIN_MASS: return "zero-bin-mass";
    case RB_ERR_HYPOTHESIS_VIOLATED: return "hypothesis-violated";
    case RB_ERR_TOO_LARGE_FOR_BRUTE_FORCE: return "too-large-for-brute-force";
    case RB_ERR_SINGULAR_DESIGN: return "singular-design";
    case RB_ERR_NOT_ATTAINABLE: return "not-attainable";
    case RB_ERR_TABLES_MISMATCH: return "tables-mismatch";
    case RB_ERR_IO: return "io";
    case RB_ERR_NULL_ARGUMENT: return "null-argument";
    case RB_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case RB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rb_last_error(void) { return last_error.c_str(); }

// ---- models

rb_status rb_model_parse(const char* json_text, rb_model** out) {
  RB_REQUIRE(json_text);
  RB_REQUIRE(out);
  return guarded([&] { *out = new rb_model{rb::parse_model_json(json_text)}; });
}

rb_status rb_model_load(const char* path, rb_model** out) {
  RB_REQUIRE(path);
  RB_REQUIRE(out);
  return guarded([&] { *out = new rb_model{rb::load_model_file(path)}; });
}

rb_status rb_model_to_json(const rb_model* model, char** out) {
  RB_REQUIRE(model);
  RB_REQUIRE(out);
  return guarded([&] {
    const std::string text = rb::model_to_json(model->model);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void rb_string_free(char* s) { delete[] s; }
void rb_model_free(rb_model* model) { delete model; }

size_t rb_model_theta_count(const rb_model* m) { return m ? m->model.theta_count() : 0; }
size_t rb_model_psi_count(const rb_model* m) { return m ? m->model.psi_count() : 0; }
size_t rb_model_x_count(const rb_model* m) { return m ? m->model.x_count() : 0; }

const char* rb_model_psi_label(const rb_model* m, size_t psi) {
  if (!m || psi >= m->model.psi_count()) return nullptr;
  return m->model.psi()[psi].label.c_str();
}

size_t rb_model_warning_count(const rb_model* m) { return m ? m->model.warnings().size() : 0; }

const char* rb_model_warning(const rb_model* m, size_t i) {
  if (!m || i >= m->model.warnings().size()) return nullptr;
  return m->model.warnings()[i].c_str();
}

int rb_model_same(const rb_model* a, const rb_model* b) {
  return a && b && a->model.same_as(b->model) ? 1 : 0;
}

rb_status rb_model_resolve_x(const rb_model* model, double value, size_t* index) {
  RB_REQUIRE(model);
  RB_REQUIRE(index);
  return guarded([&] { *index = model->model.resolve_x(value); });
}

rb_status rb_model_geometric_poisson(size_t points, double ratio, double tail_bound, rb_model** out) {
  RB_REQUIRE(out);
  return guarded([&] { *out = new rb_model{rb::geometric_poisson_model(points, ratio, tail_bound)}; });
}

rb_status rb_model_normal_normal_grid(double tau, double sigma, double x, double lambda,
                                      rb_model** out) {
  RB_REQUIRE(out);
  return guarded([&] {
    *out = new rb_model{rb::build_grid(rb::normal_normal_testbed(tau, sigma), x, lambda).model};
  });
}

// ---- tables

rb_status rb_tables_at_index(const rb_model* model, size_t x, rb_tables** out) {
  RB_REQUIRE(model);
  RB_REQUIRE(out);
  return guarded([&] {
    *out = new rb_tables{rb::belief_tables(model->model, rb::Observation::at_index(x))};
  });
}

rb_status rb_tables_at_value(const rb_model* model, double x, rb_tables** out) {
  RB_REQUIRE(model);
  RB_REQUIRE(out);
  return guarded([&] {
    *out = new rb_tables{rb::belief_tables(model->model, rb::Observation::at_value(x))};
  });
}

rb_status rb_tables_from_marginals(const double* marg_prior, const double* marg_post, size_t n,
                                   rb_tables** out) {
  RB_REQUIRE(marg_prior);
  RB_REQUIRE(marg_post);
  RB_REQUIRE(out);
  return guarded([&] {
    *out = new rb_tables{rb::tables_from_marginals({marg_prior, n}, {marg_post, n})};
  });
}

void rb_tables_free(rb_tables* t) { delete t; }
size_t rb_tables_size(const rb_tables* t) { return t ? t->tables.size() : 0; }
double rb_tables_evidence(const rb_tables* t) {
  return t ? t->tables.evidence : std::numeric_limits<double>::quiet_NaN();
}
const double* rb_tables_marg_prior(const rb_tables* t) { return t ? t->tables.marg_prior.data() : nullptr; }
const double* rb_tables_marg_post(const rb_tables* t) { return t ? t->tables.marg_post.data() : nullptr; }
const double* rb_tables_rb(const rb_tables* t) { return t ? t->tables.rb.data() : nullptr; }

const char* rb_tables_psi_label(const rb_tables* t, size_t psi) {
  if (!t || psi >= t->tables.psi.size()) return nullptr;
  return t->tables.psi[psi].label.c_str();
}

rb_status rb_predictive(const rb_model* model, size_t x, double* prior_pred, double* post_pred,
                        double* rb_pred, size_t capacity, size_t* count) {
  RB_REQUIRE(model);
  RB_REQUIRE(count);
  const auto& kernel = model->model.future_kernel();
  if (!kernel) return set_error(RB_ERR_INVALID_ARGUMENT, "model has no future_kernel");
  *count = kernel->y_count;
  if (capacity < kernel->y_count) {
    return set_error(RB_ERR_BUFFER_TOO_SMALL, "predictive needs " + std::to_string(kernel->y_count) + " slots");
  }
  return guarded([&] {
    const auto obs = rb::Observation::at_index(x);
    const rb::Posterior post = rb::compute_posterior(model->model, obs);
    const rb::PredictiveTables p = rb::posterior_predictive(model->model, post.probs, *kernel, obs);
    for (size_t y = 0; y < p.rb_pred.size(); ++y) {
      if (prior_pred) prior_pred[y] = p.prior_pred[y];
      if (post_pred) post_pred[y] = p.post_pred[y];
      if (rb_pred) rb_pred[y] = p.rb_pred[y];
    }
  });
}

// ---- losses and estimators

rb_status rb_loss_parse(const char* spec, rb_loss** out) {
  RB_REQUIRE(spec);
  RB_REQUIRE(out);
  return guarded([&] {
    rb::LossSpec loss = rb::parse_loss(spec);
    *out = new rb_loss{loss, rb::describe(loss)};
  });
}

const char* rb_loss_describe(const rb_loss* loss) { return loss ? loss->description.c_str() : nullptr; }
void rb_loss_free(rb_loss* loss) { delete loss; }

rb_status rb_estimate_lrse(const rb_tables* t, rb_estimate* out) {
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { fill(rb::lrse(t->tables), out); });
}

rb_status rb_estimate_map(const rb_tables* t, rb_estimate* out) {
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { fill(rb::map(t->tables), out); });
}

rb_status rb_estimate_bayes(const rb_loss* loss, const rb_tables* t, rb_estimate* out) {
  RB_REQUIRE(loss);
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { fill(rb::bayes_rule(loss->spec, t->tables), out); });
}

rb_status rb_posterior_risk(const rb_loss* loss, const rb_tables* t, size_t candidate, double* out) {
  RB_REQUIRE(loss);
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { *out = rb::posterior_risk(loss->spec, candidate, t->tables); });
}

rb_status rb_lrse_stability_bound(const rb_tables* t, double* out) {
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { *out = rb::lrse_stability_bound(t->tables); });
}

rb_status rb_prior_risk(const rb_loss* loss, rb_rule rule, const rb_model* model, unsigned workers,
                        rb_risk_report* out, double* per_class_error, size_t capacity) {
  RB_REQUIRE(loss);
  RB_REQUIRE(model);
  RB_REQUIRE(out);
  if (per_class_error && capacity < model->model.psi_count()) {
    return set_error(RB_ERR_BUFFER_TOO_SMALL,
                     "per_class_error needs " + std::to_string(model->model.psi_count()) + " slots");
  }
  return guarded([&] {
    const rb::DecisionRule d = tabulate(rule, loss->spec, model->model);
    const rb::RiskReport r = rb::prior_risk(loss->spec, d, model->model, workers == 0 ? 1 : workers);
    *out = {r.unweighted_sum, r.prior_weighted_sum, r.prior_risk, r.identity_residual};
    if (per_class_error) {
      for (size_t j = 0; j < r.per_class_error.size(); ++j) per_class_error[j] = r.per_class_error[j];
    }
  });
}

rb_status rb_unbiasedness_gap(const rb_loss* loss, rb_rule rule, const rb_model* model, double* out) {
  RB_REQUIRE(loss);
  RB_REQUIRE(model);
  RB_REQUIRE(out);
  return guarded([&] {
    *out = rb::unbiasedness_gap(loss->spec, tabulate(rule, loss->spec, model->model), model->model);
  });
}

// ---- regions

rb_status rb_region_compute(rb_region_family family, const rb_loss* loss, const rb_tables* t,
                            double gamma, rb_region** out) {
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  if (family == RB_REGION_LPL && loss == nullptr) {
    return set_error(RB_ERR_NULL_ARGUMENT, "lowest posterior loss regions need a loss");
  }
  return guarded([&] {
    switch (family) {
      case RB_REGION_HPD: *out = new rb_region{rb::hpd_region(t->tables, gamma)}; return;
      case RB_REGION_RS: *out = new rb_region{rb::rs_region(t->tables, gamma)}; return;
      case RB_REGION_LPL: *out = new rb_region{rb::lpl_region(loss->spec, t->tables, gamma)}; return;
    }
    rb::fail(rb::ErrorCode::InvalidArgument, "unknown region family");
  });
}

void rb_region_free(rb_region* r) { delete r; }
size_t rb_region_size(const rb_region* r) { return r ? r->region.members.size() : 0; }
const size_t* rb_region_members(const rb_region* r) { return r ? r->region.members.data() : nullptr; }
double rb_region_threshold(const rb_region* r) {
  return r ? r->region.threshold : std::numeric_limits<double>::quiet_NaN();
}
double rb_region_attained_mass(const rb_region* r) {
  return r ? r->region.attained_mass : std::numeric_limits<double>::quiet_NaN();
}

rb_status rb_tail_probability(const rb_tables* t, size_t psi, double* out) {
  RB_REQUIRE(t);
  RB_REQUIRE(out);
  return guarded([&] { *out = rb::tail_probability(t->tables, psi); });
}

rb_status rb_attainable_gammas(const rb_tables* t, double* out, size_t capacity, size_t* count) {
  RB_REQUIRE(t);
  RB_REQUIRE(count);
  std::vector<double> g;
  const rb_status st = guarded([&] { g = rb::attainable_gammas(t->tables); });
  if (st != RB_OK) return st;
  *count = g.size();
  if (out == nullptr) return RB_OK;
  if (capacity < g.size()) {
    return set_error(RB_ERR_BUFFER_TOO_SMALL, "need " + std::to_string(g.size()) + " slots");
  }
  std::copy(g.begin(), g.end(), out);
  return RB_OK;
}

rb_status rb_minimal_prior_size_check(const rb_tables* t, double gamma, int* holds) {
  RB_REQUIRE(t);
  RB_REQUIRE(holds);
  return guarded([&] { *holds = rb::minimal_prior_size_check(t->tables, gamma) ? 1 : 0; });
}

rb_status rb_eta_sweep(const rb_tables* t, double gamma, const double* etas, size_t n_etas,
                       rb_sweep** out) {
  RB_REQUIRE(t);
  RB_REQUIRE(etas);
  RB_REQUIRE(out);
  return guarded([&] {
    auto* s = new rb_sweep{rb::eta_sweep(t->tables, gamma, {etas, n_etas}), {}, {}, {}};
    for (const auto& e : s->report.entries) s->entries.push_back({e.region});
    s->reference = {s->report.reference};
    s->reference_next = {s->report.reference_next};
    *out = s;
  });
}

void rb_sweep_free(rb_sweep* s) { delete s; }
double rb_sweep_gamma_next(const rb_sweep* s) {
  return s ? s->report.gamma_next : std::numeric_limits<double>::quiet_NaN();
}
size_t rb_sweep_entry_count(const rb_sweep* s) { return s ? s->entries.size() : 0; }
double rb_sweep_entry_eta(const rb_sweep* s, size_t i) {
  return s && i < s->entries.size() ? s->report.entries[i].eta : std::numeric_limits<double>::quiet_NaN();
}
const rb_region* rb_sweep_entry_region(const rb_sweep* s, size_t i) {
  return s && i < s->entries.size() ? &s->entries[i] : nullptr;
}
const rb_region* rb_sweep_reference(const rb_sweep* s) { return s ? &s->reference : nullptr; }
const rb_region* rb_sweep_reference_next(const rb_sweep* s) { return s ? &s->reference_next : nullptr; }

size_t rb_sweep_liminf(const rb_sweep* s, const size_t** members) {
  if (!s) return 0;
  if (members) *members = s->report.liminf_members.data();
  return s->report.liminf_members.size();
}

size_t rb_sweep_limsup(const rb_sweep* s, const size_t** members) {
  if (!s) return 0;
  if (members) *members = s->report.limsup_members.data();
  return s->report.limsup_members.size();
}

int rb_sweep_flags(const rb_sweep* s) {
  if (!s) return 0;
  return (s->report.lower_inclusion ? 1 : 0) | (s->report.upper_inclusion ? 2 : 0) |
         (s->report.converged ? 4 : 0);
}

// ---- discretization experiments

rb_status rb_converge_normal_normal(double tau, double sigma, double x, const double* lambdas,
                                    size_t n_lambdas, double gamma, const double* etas,
                                    size_t n_etas, rb_convergence** out) {
  RB_REQUIRE(lambdas);
  RB_REQUIRE(out);
  if (n_etas > 0 && etas == nullptr) return set_error(RB_ERR_NULL_ARGUMENT, "etas must not be NULL");
  return guarded([&] {
    const rb::ContinuousModel1D model = rb::normal_normal_testbed(tau, sigma);
    // The closed-form LRSE is the one-observation regression with X = [1].
    rb::GaussianRegression reg;
    reg.X = Eigen::MatrixXd::Ones(1, 1);
    reg.y = Eigen::VectorXd::Constant(1, x);
    reg.w = Eigen::VectorXd::Ones(1);
    reg.sigma2 = sigma * sigma;
    reg.tau2 = tau * tau;
    auto conv = std::make_unique<rb_convergence>();
    conv->target = rb::regression_estimates(reg).psi_lrse;
    conv->bayes = rb::capped_bayes_convergence(model, x, {lambdas, n_lambdas}, conv->target);
    conv->lrse = rb::lrse_convergence(model, x, {lambdas, n_lambdas}, conv->target);
    conv->regions = rb::region_convergence(model, x, gamma, {lambdas, n_lambdas},
                                                {etas, n_etas});
    *out = conv.release();
  });
}

void rb_convergence_free(rb_convergence* c) { delete c; }
double rb_convergence_target(const rb_convergence* c) {
  return c ? c->target : std::numeric_limits<double>::quiet_NaN();
}
double rb_convergence_reference_lambda(const rb_convergence* c) {
  return c ? c->regions.reference_lambda : std::numeric_limits<double>::quiet_NaN();
}
size_t rb_convergence_row_count(const rb_convergence* c) { return c ? c->bayes.size() : 0; }

rb_status rb_convergence_get_row(const rb_convergence* c, rb_method method, size_t i,
                                 rb_convergence_row* out) {
  RB_REQUIRE(c);
  RB_REQUIRE(out);
  const auto& rows = method == RB_METHOD_MAP ? c->bayes : c->lrse;
  if (i >= rows.size()) return set_error(RB_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = rows[i];
  *out = {r.lambda, r.eta, r.bins, r.estimate, r.error};
  return RB_OK;
}

size_t rb_convergence_rs_count(const rb_convergence* c) { return c ? c->regions.rs_rows.size() : 0; }
size_t rb_convergence_lpl_count(const rb_convergence* c) { return c ? c->regions.lpl_rows.size() : 0; }

rb_status rb_convergence_rs_row(const rb_convergence* c, size_t i, rb_distance_row* out) {
  RB_REQUIRE(c);
  RB_REQUIRE(out);
  if (i >= c->regions.rs_rows.size()) return set_error(RB_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = c->regions.rs_rows[i];
  *out = {r.lambda, r.eta, r.distance, r.attained_mass};
  return RB_OK;
}

rb_status rb_convergence_lpl_row(const rb_convergence* c, size_t i, rb_distance_row* out) {
  RB_REQUIRE(c);
  RB_REQUIRE(out);
  if (i >= c->regions.lpl_rows.size()) return set_error(RB_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = c->regions.lpl_rows[i];
  *out = {r.lambda, r.eta, r.distance, r.attained_mass};
  return RB_OK;
}

// ---- worked models

rb_status rb_classify(const rb_classifier* m, int x, rb_method method, size_t* psi_index, int* tie) {
  RB_REQUIRE(m);
  RB_REQUIRE(psi_index);
  return guarded([&] {
    const auto r = rb::classify({m->psi1, m->psi2, m->epsilon}, x, to_kind(method));
    *psi_index = r.psi_index;
    if (tie) *tie = r.tie ? 1 : 0;
  });
}

rb_status rb_classifier_risks(const rb_classifier* m, rb_method method, rb_classifier_risk* out) {
  RB_REQUIRE(m);
  RB_REQUIRE(out);
  return guarded([&] {
    const auto r = rb::classifier_risks({m->psi1, m->psi2, m->epsilon}, to_kind(method));
    *out = {r.per_class_error[0], r.per_class_error[1], r.unweighted_sum, r.prior_weighted_sum};
  });
}

rb_status rb_classifier_model(const rb_classifier* m, rb_model** out) {
  RB_REQUIRE(m);
  RB_REQUIRE(out);
  return guarded([&] { *out = new rb_model{rb::to_finite_model({m->psi1, m->psi2, m->epsilon})}; });
}

rb_status rb_regression(const double* X, size_t n, size_t k, const double* y, const double* w,
                        double sigma2, double tau2, rb_regression_result* out) {
  RB_REQUIRE(X);
  RB_REQUIRE(y);
  RB_REQUIRE(w);
  RB_REQUIRE(out);
  return guarded([&] {
    const auto model = to_regression(X, n, k, y, w, sigma2, tau2);
    const auto e = rb::regression_estimates(model);
    const auto p = rb::regression_predict(model);
    *out = {e.psi_map, e.psi_lrse, e.mu_post_psi, e.var_prior_psi, e.var_post_psi,
            p.z_map, p.z_lrse, p.var_prior_z, p.var_post_z};
  });
}

rb_status rb_predict_class(const rb_class_predictor* m, rb_method method, int* out) {
  RB_REQUIRE(m);
  RB_REQUIRE(out);
  return guarded([&] {
    *out = rb::predict_class({m->alpha, m->beta, m->n, m->cbar, m->f_ratio}, to_kind(method));
  });
}

double rb_f_ratio_gaussian(double x, double mu) { return rb::f_ratio_gaussian(x, mu); }

rb_status rb_class_threshold(double alpha, double beta, int n, double cbar, double mu,
                             rb_method method, double* out) {
  RB_REQUIRE(out);
  return guarded([&] { *out = rb::class_threshold_x(alpha, beta, n, cbar, mu, to_kind(method)); });
}

// ---- simulation

void rb_sim_config_default(rb_sim_config* cfg) {
  if (!cfg) return;
  const rb::SimConfig d;
  *cfg = {d.alpha, d.beta, d.mu, d.n, d.reps, d.seed, RB_PROTOCOL_PRIOR, d.threads};
}

rb_status rb_simulate(const rb_sim_config* cfg, rb_method_risk* map_out, rb_method_risk* lrse_out) {
  RB_REQUIRE(cfg);
  return guarded([&] {
    const auto risks = rb::conditional_risk_mc(to_config(*cfg));
    if (map_out) fill(risks[0], map_out);
    if (lrse_out) fill(risks[1], lrse_out);
  });
}

}  // extern "C"

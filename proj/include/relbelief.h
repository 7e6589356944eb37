/* Copyright 2026 The relbelief Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the relbelief library: relative belief estimators, Bayes
 * rules under prior-based losses, credible regions, grid discretization of
 * one-dimensional models, closed-form worked models and a seeded Monte Carlo
 * study of predictive classifiers.
 *
 * Every fallible call returns an rb_status. On failure, rb_last_error() gives
 * a message for the calling thread that stays valid until its next failing
 * call. Handles are opaque, immutable after creation and safe to read from
 * several threads. Pointers returned by accessors live as long as the handle.
 */
#ifndef RELBELIEF_H
#define RELBELIEF_H

#include <stddef.h>
#include <stdint.h>

#if defined(RB_BUILDING_LIBRARY)
#define RB_API __attribute__((visibility("default")))
#else
#define RB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rb_status {
  RB_OK = 0,
  RB_ERR_INVALID_ARGUMENT = 1,
  RB_ERR_VALIDATION = 2,
  RB_ERR_ZERO_EVIDENCE = 3,
  RB_ERR_UNKNOWN_PSI = 4,
  RB_ERR_INFINITE_SAMPLE_SPACE = 5,
  RB_ERR_NON_STOCHASTIC_KERNEL = 6,
  RB_ERR_QUADRATURE_FAILURE = 7,
  RB_ERR_ZERO_BIN_MASS = 8,
  RB_ERR_HYPOTHESIS_VIOLATED = 9,
  RB_ERR_TOO_LARGE_FOR_BRUTE_FORCE = 10,
  RB_ERR_SINGULAR_DESIGN = 11,
  RB_ERR_NOT_ATTAINABLE = 12,
  RB_ERR_TABLES_MISMATCH = 13,
  RB_ERR_IO = 14,
  RB_ERR_NULL_ARGUMENT = 15,
  RB_ERR_BUFFER_TOO_SMALL = 16,
  RB_ERR_INTERNAL = 17
} rb_status;

typedef enum rb_method { RB_METHOD_MAP = 0, RB_METHOD_LRSE = 1 } rb_method;

RB_API const char* rb_version(void);
RB_API const char* rb_status_name(rb_status status);
RB_API const char* rb_last_error(void);

/* ---- models ------------------------------------------------------------ */

typedef struct rb_model rb_model;

/* JSON model spec; see the README for the schema. */
RB_API rb_status rb_model_parse(const char* json_text, rb_model** out);
RB_API rb_status rb_model_load(const char* path, rb_model** out);
/* Serialized model; release with rb_string_free. */
RB_API rb_status rb_model_to_json(const rb_model* model, char** out);
RB_API void rb_string_free(char* s);
RB_API void rb_model_free(rb_model* model);

RB_API size_t rb_model_theta_count(const rb_model* model);
RB_API size_t rb_model_psi_count(const rb_model* model);
/* Zero when the likelihood is a density in x. */
RB_API size_t rb_model_x_count(const rb_model* model);
RB_API const char* rb_model_psi_label(const rb_model* model, size_t psi);
RB_API size_t rb_model_warning_count(const rb_model* model);
RB_API const char* rb_model_warning(const rb_model* model, size_t i);
/* 1 when the two models agree field for field. */
RB_API int rb_model_same(const rb_model* a, const rb_model* b);
/* Index of a tabulated sample point by value. */
RB_API rb_status rb_model_resolve_x(const rb_model* model, double value, size_t* index);

/* Geometric prior on k = 0..points-1 with Poisson(k + 1) data. */
RB_API rb_status rb_model_geometric_poisson(size_t points, double ratio, double tail_bound,
                                            rb_model** out);
/* psi ~ N(0, tau^2), x | psi ~ N(psi, sigma^2) binned at width lambda; the
 * resulting model has a single sample point, x. */
RB_API rb_status rb_model_normal_normal_grid(double tau, double sigma, double x, double lambda,
                                             rb_model** out);

/* ---- belief tables ----------------------------------------------------- */

typedef struct rb_tables rb_tables;

RB_API rb_status rb_tables_at_index(const rb_model* model, size_t x, rb_tables** out);
RB_API rb_status rb_tables_at_value(const rb_model* model, double x, rb_tables** out);
RB_API rb_status rb_tables_from_marginals(const double* marg_prior, const double* marg_post,
                                          size_t n, rb_tables** out);
RB_API void rb_tables_free(rb_tables* tables);

RB_API size_t rb_tables_size(const rb_tables* tables);
RB_API double rb_tables_evidence(const rb_tables* tables);
RB_API const double* rb_tables_marg_prior(const rb_tables* tables);
RB_API const double* rb_tables_marg_post(const rb_tables* tables);
RB_API const double* rb_tables_rb(const rb_tables* tables);
RB_API const char* rb_tables_psi_label(const rb_tables* tables, size_t psi);

/* Prior and posterior predictive of the model's future kernel at sample
 * point x. Each buffer needs room for `capacity` values; the kernel's
 * support size is written to `count`. */
RB_API rb_status rb_predictive(const rb_model* model, size_t x, double* prior_pred,
                               double* post_pred, double* rb_pred, size_t capacity,
                               size_t* count);

/* ---- losses and estimators --------------------------------------------- */

typedef struct rb_loss rb_loss;

/* "zero-one", "prior-based", "capped:<eta>", "ball:<lambda>",
 * "weighted:<file>" or "discretized:<lambda>:<eta>". */
RB_API rb_status rb_loss_parse(const char* spec, rb_loss** out);
RB_API const char* rb_loss_describe(const rb_loss* loss);
RB_API void rb_loss_free(rb_loss* loss);

typedef struct rb_estimate {
  size_t psi_index;
  double criterion_value; /* rb, posterior probability, or minus the posterior risk */
  int tie;                /* the lowest optimal index was returned */
  size_t optimal_count;
} rb_estimate;

RB_API rb_status rb_estimate_lrse(const rb_tables* tables, rb_estimate* out);
RB_API rb_status rb_estimate_map(const rb_tables* tables, rb_estimate* out);
RB_API rb_status rb_estimate_bayes(const rb_loss* loss, const rb_tables* tables, rb_estimate* out);
RB_API rb_status rb_posterior_risk(const rb_loss* loss, const rb_tables* tables, size_t candidate,
                                   double* out);
RB_API rb_status rb_lrse_stability_bound(const rb_tables* tables, double* out);

typedef struct rb_risk_report {
  double unweighted_sum;
  double prior_weighted_sum;
  double prior_risk;
  double identity_residual;
} rb_risk_report;

typedef enum rb_rule { RB_RULE_LRSE = 0, RB_RULE_MAP = 1, RB_RULE_BAYES = 2 } rb_rule;

/* Exact prior risk under `loss` of a rule tabulated over the sample space.
 * RB_RULE_BAYES uses the Bayes rule of `loss` itself. per_class_error, when
 * not NULL, receives psi_count values. */
RB_API rb_status rb_prior_risk(const rb_loss* loss, rb_rule rule, const rb_model* model,
                               unsigned workers, rb_risk_report* out, double* per_class_error,
                               size_t capacity);
/* Nonnegative iff the rule is Bayesian unbiased under the indicator loss. */
RB_API rb_status rb_unbiasedness_gap(const rb_loss* loss, rb_rule rule, const rb_model* model,
                                     double* out);

/* ---- credible regions -------------------------------------------------- */

typedef struct rb_region rb_region;
typedef enum rb_region_family { RB_REGION_HPD = 0, RB_REGION_RS = 1, RB_REGION_LPL = 2 } rb_region_family;

/* `loss` is required for RB_REGION_LPL and ignored otherwise. */
RB_API rb_status rb_region_compute(rb_region_family family, const rb_loss* loss,
                                   const rb_tables* tables, double gamma, rb_region** out);
RB_API void rb_region_free(rb_region* region);
RB_API size_t rb_region_size(const rb_region* region);
RB_API const size_t* rb_region_members(const rb_region* region);
RB_API double rb_region_threshold(const rb_region* region);
RB_API double rb_region_attained_mass(const rb_region* region);

RB_API rb_status rb_tail_probability(const rb_tables* tables, size_t psi, double* out);
RB_API rb_status rb_attainable_gammas(const rb_tables* tables, double* out, size_t capacity,
                                      size_t* count);
RB_API rb_status rb_minimal_prior_size_check(const rb_tables* tables, double gamma, int* holds);

typedef struct rb_sweep rb_sweep;

/* Lowest posterior loss regions under capped:<eta> for a strictly
 * decreasing eta schedule, compared with the relative surprise regions at
 * gamma and at the next attainable content. */
RB_API rb_status rb_eta_sweep(const rb_tables* tables, double gamma, const double* etas,
                              size_t n_etas, rb_sweep** out);
RB_API void rb_sweep_free(rb_sweep* sweep);
RB_API double rb_sweep_gamma_next(const rb_sweep* sweep);
RB_API size_t rb_sweep_entry_count(const rb_sweep* sweep);
RB_API double rb_sweep_entry_eta(const rb_sweep* sweep, size_t i);
RB_API const rb_region* rb_sweep_entry_region(const rb_sweep* sweep, size_t i);
RB_API const rb_region* rb_sweep_reference(const rb_sweep* sweep);
RB_API const rb_region* rb_sweep_reference_next(const rb_sweep* sweep);
RB_API size_t rb_sweep_liminf(const rb_sweep* sweep, const size_t** members);
RB_API size_t rb_sweep_limsup(const rb_sweep* sweep, const size_t** members);
/* Bit 0: lower inclusion, bit 1: upper inclusion, bit 2: converged. */
RB_API int rb_sweep_flags(const rb_sweep* sweep);

/* ---- discretization experiments ---------------------------------------- */

typedef struct rb_convergence rb_convergence;

typedef struct rb_convergence_row {
  double lambda;
  double eta; /* NaN for the grid LRSE */
  size_t bins;
  double estimate;
  double error;
} rb_convergence_row;

typedef struct rb_distance_row {
  double lambda;
  double eta; /* NaN for the relative surprise region */
  double distance;
  double attained_mass;
} rb_distance_row;

/* Normal-Normal testbed: capped-loss Bayes rule and grid LRSE against the
 * closed-form LRSE, then region distances at gamma for every lambda and eta. */
RB_API rb_status rb_converge_normal_normal(double tau, double sigma, double x,
                                           const double* lambdas, size_t n_lambdas, double gamma,
                                           const double* etas, size_t n_etas,
                                           rb_convergence** out);
RB_API void rb_convergence_free(rb_convergence* conv);
RB_API double rb_convergence_target(const rb_convergence* conv);
RB_API double rb_convergence_reference_lambda(const rb_convergence* conv);
RB_API size_t rb_convergence_row_count(const rb_convergence* conv);
/* method RB_METHOD_MAP selects the capped-loss Bayes rule rows. */
RB_API rb_status rb_convergence_get_row(const rb_convergence* conv, rb_method method, size_t i,
                                        rb_convergence_row* out);
RB_API size_t rb_convergence_rs_count(const rb_convergence* conv);
RB_API rb_status rb_convergence_rs_row(const rb_convergence* conv, size_t i, rb_distance_row* out);
RB_API size_t rb_convergence_lpl_count(const rb_convergence* conv);
RB_API rb_status rb_convergence_lpl_row(const rb_convergence* conv, size_t i, rb_distance_row* out);

/* ---- worked models ----------------------------------------------------- */

typedef struct rb_classifier {
  double psi1;
  double psi2;
  double epsilon; /* prior mass on psi2 */
} rb_classifier;

typedef struct rb_classifier_risk {
  double error_psi1;
  double error_psi2;
  double sum;
  double prior_weighted;
} rb_classifier_risk;

/* x is 0 or 1; psi_index is 0 for psi1 and 1 for psi2. */
RB_API rb_status rb_classify(const rb_classifier* model, int x, rb_method method,
                             size_t* psi_index, int* tie);
RB_API rb_status rb_classifier_risks(const rb_classifier* model, rb_method method,
                                     rb_classifier_risk* out);
RB_API rb_status rb_classifier_model(const rb_classifier* model, rb_model** out);

typedef struct rb_regression_result {
  double psi_map;
  double psi_lrse;
  double mu_post_psi;
  double var_prior_psi;
  double var_post_psi;
  double z_map;
  double z_lrse;
  double var_prior_z;
  double var_post_z;
} rb_regression_result;

/* X is n-by-k, row-major. */
RB_API rb_status rb_regression(const double* X, size_t n, size_t k, const double* y,
                               const double* w, double sigma2, double tau2,
                               rb_regression_result* out);

typedef struct rb_class_predictor {
  double alpha;
  double beta;
  int n;
  double cbar;
  double f_ratio;
} rb_class_predictor;

RB_API rb_status rb_predict_class(const rb_class_predictor* model, rb_method method, int* out);
RB_API double rb_f_ratio_gaussian(double x, double mu);
RB_API rb_status rb_class_threshold(double alpha, double beta, int n, double cbar, double mu,
                                    rb_method method, double* out);

/* ---- simulation -------------------------------------------------------- */

typedef enum rb_protocol { RB_PROTOCOL_PRIOR = 0, RB_PROTOCOL_CONDITIONAL = 1 } rb_protocol;

typedef struct rb_sim_config {
  double alpha;
  double beta;
  double mu;
  int n;
  uint64_t reps;
  uint64_t seed;
  rb_protocol protocol;
  unsigned threads;
} rb_sim_config;

typedef struct rb_method_risk {
  double m0;
  double m1;
  double sum;
  double se0;
  double se1;
  double se_sum;
  uint64_t errors0;
  uint64_t errors1;
} rb_method_risk;

RB_API void rb_sim_config_default(rb_sim_config* cfg);
RB_API rb_status rb_simulate(const rb_sim_config* cfg, rb_method_risk* map_out,
                             rb_method_risk* lrse_out);

#ifdef __cplusplus
}
#endif

#endif /* RELBELIEF_H */

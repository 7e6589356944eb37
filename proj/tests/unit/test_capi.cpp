// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "relbelief.h"

namespace {

const char* kRareClass = R"({
  "theta": ["psi1", "psi2"],
  "prior": [0.95, 0.05],
  "likelihood": {"family": "bernoulli", "p": [0.05, 0.8]}
})";

rb_model* parse(const char* text) {
  rb_model* m = nullptr;
  REQUIRE(rb_model_parse(text, &m) == RB_OK);
  return m;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(rb_version()) > 0);
  CHECK(std::string(rb_status_name(RB_ERR_VALIDATION)) == "validation");
  CHECK(std::string(rb_status_name(RB_OK)) == "ok");
}

TEST_CASE("estimates through the C interface") {
  rb_model* m = parse(kRareClass);
  CHECK(rb_model_theta_count(m) == 2);
  CHECK(rb_model_x_count(m) == 2);
  CHECK(std::string(rb_model_psi_label(m, 1)) == "psi2");

  rb_tables* t = nullptr;
  REQUIRE(rb_tables_at_index(m, 1, &t) == RB_OK);
  CHECK(rb_tables_size(t) == 2);
  CHECK(rb_tables_marg_post(t)[0] == doctest::Approx(0.5429).epsilon(1e-4));
  CHECK(rb_tables_evidence(t) == doctest::Approx(0.0875));

  rb_estimate e{};
  REQUIRE(rb_estimate_lrse(t, &e) == RB_OK);
  CHECK(e.psi_index == 1);
  CHECK(e.tie == 0);
  REQUIRE(rb_estimate_map(t, &e) == RB_OK);
  CHECK(e.psi_index == 0);

  rb_loss* loss = nullptr;
  REQUIRE(rb_loss_parse("prior-based", &loss) == RB_OK);
  REQUIRE(rb_estimate_bayes(loss, t, &e) == RB_OK);
  CHECK(e.psi_index == 1);
  double risk = 0.0;
  REQUIRE(rb_posterior_risk(loss, t, 0, &risk) == RB_OK);
  CHECK(risk == doctest::Approx(rb_tables_rb(t)[1]));

  rb_risk_report report{};
  std::vector<double> per_class(2);
  REQUIRE(rb_prior_risk(loss, RB_RULE_LRSE, m, 2, &report, per_class.data(), per_class.size()) == RB_OK);
  CHECK(report.identity_residual < 1e-12);
  CHECK(report.unweighted_sum == doctest::Approx(0.25));
  CHECK(per_class[0] == doctest::Approx(0.05));
  CHECK(rb_prior_risk(loss, RB_RULE_LRSE, m, 1, &report, per_class.data(), 1) == RB_ERR_BUFFER_TOO_SMALL);

  double gap = 0.0;
  REQUIRE(rb_unbiasedness_gap(loss, RB_RULE_LRSE, m, &gap) == RB_OK);
  CHECK(gap >= 0.0);

  rb_loss_free(loss);
  rb_tables_free(t);
  rb_model_free(m);
}

TEST_CASE("regions and sweeps") {
  const double prior[] = {0.01, 0.49, 0.50};
  const double post[] = {0.05, 0.55, 0.40};
  rb_tables* t = nullptr;
  REQUIRE(rb_tables_from_marginals(prior, post, 3, &t) == RB_OK);

  rb_region* r = nullptr;
  REQUIRE(rb_region_compute(RB_REGION_RS, nullptr, t, 0.05, &r) == RB_OK);
  REQUIRE(rb_region_size(r) == 1);
  CHECK(rb_region_members(r)[0] == 0);
  rb_region_free(r);
  CHECK(rb_region_compute(RB_REGION_LPL, nullptr, t, 0.05, &r) == RB_ERR_NULL_ARGUMENT);

  double gammas[3];
  size_t count = 0;
  REQUIRE(rb_attainable_gammas(t, gammas, 3, &count) == RB_OK);
  CHECK(count == 3);
  CHECK(gammas[1] == doctest::Approx(0.6));
  CHECK(rb_attainable_gammas(t, gammas, 2, &count) == RB_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 3);

  const double etas[] = {0.1, 0.005};
  rb_sweep* s = nullptr;
  REQUIRE(rb_eta_sweep(t, 0.05, etas, 2, &s) == RB_OK);
  CHECK(rb_sweep_entry_count(s) == 2);
  CHECK(rb_region_members(rb_sweep_entry_region(s, 0))[0] == 1);
  CHECK(rb_region_members(rb_sweep_entry_region(s, 1))[0] == 0);
  CHECK((rb_sweep_flags(s) & 3) == 3);
  rb_sweep_free(s);
  CHECK(rb_eta_sweep(t, 0.3, etas, 2, &s) == RB_ERR_NOT_ATTAINABLE);
  CHECK(std::string(rb_last_error()).find("attainable") != std::string::npos);

  int holds = 0;
  REQUIRE(rb_minimal_prior_size_check(t, 0.6, &holds) == RB_OK);
  CHECK(holds == 1);
  rb_tables_free(t);
}

TEST_CASE("errors carry codes and messages") {
  rb_model* m = nullptr;
  CHECK(rb_model_parse(R"({"theta": ["a", "b"], "prior": [0.5, 0.4], "likelihood": [[1], [1]]})", &m) ==
        RB_ERR_VALIDATION);
  CHECK(m == nullptr);
  CHECK(std::string(rb_last_error()).rfind("prior:", 0) == 0);
  CHECK(rb_model_parse(nullptr, &m) == RB_ERR_NULL_ARGUMENT);
  CHECK(rb_model_load("/nonexistent.json", &m) == RB_ERR_IO);

  m = parse(kRareClass);
  rb_tables* t = nullptr;
  CHECK(rb_tables_at_index(m, 5, &t) == RB_ERR_INVALID_ARGUMENT);
  rb_model_free(m);

  double r = 0.0;
  CHECK(rb_regression(nullptr, 1, 1, nullptr, nullptr, 1, 1, nullptr) == RB_ERR_NULL_ARGUMENT);
  const double X[] = {1, 2, 2, 4};
  const double y[] = {1, 2};
  const double w[] = {1, 0};
  rb_regression_result res{};
  CHECK(rb_regression(X, 2, 2, y, w, 1, 1, &res) == RB_ERR_SINGULAR_DESIGN);
  (void)r;
  rb_loss* loss = nullptr;
  CHECK(rb_loss_parse("capped:-1", &loss) == RB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("serialization round trip") {
  rb_model* m = parse(kRareClass);
  char* json = nullptr;
  REQUIRE(rb_model_to_json(m, &json) == RB_OK);
  rb_model* back = parse(json);
  CHECK(rb_model_same(m, back) == 1);
  rb_string_free(json);
  rb_model_free(back);
  rb_model_free(m);
}

TEST_CASE("worked models") {
  const rb_classifier c{0.05, 0.80, 0.05};
  size_t idx = 9;
  int tie = 1;
  REQUIRE(rb_classify(&c, 1, RB_METHOD_LRSE, &idx, &tie) == RB_OK);
  CHECK(idx == 1);
  CHECK(tie == 0);
  rb_classifier_risk risk{};
  REQUIRE(rb_classifier_risks(&c, RB_METHOD_LRSE, &risk) == RB_OK);
  CHECK(risk.sum == doctest::Approx(0.25));

  const double X[] = {1};
  const double y[] = {1};
  const double w[] = {1};
  rb_regression_result res{};
  REQUIRE(rb_regression(X, 1, 1, y, w, 1, 1, &res) == RB_OK);
  CHECK(res.psi_lrse == doctest::Approx(1.0));
  CHECK(res.z_lrse == doctest::Approx(2.0));

  int cls = -1;
  const rb_class_predictor p{1, 14, 10, 0.0, rb_f_ratio_gaussian(1.2, 1.0)};
  REQUIRE(rb_predict_class(&p, RB_METHOD_LRSE, &cls) == RB_OK);
  CHECK(cls == 1);
  REQUIRE(rb_predict_class(&p, RB_METHOD_MAP, &cls) == RB_OK);
  CHECK(cls == 0);
  double th = 0.0;
  REQUIRE(rb_class_threshold(1, 14, 10, 0.0, 1.0, RB_METHOD_LRSE, &th) == RB_OK);
  CHECK(th == doctest::Approx(0.5 + std::log(24.0 / 14.0)));
}

TEST_CASE("countable and grid models") {
  rb_model* g = nullptr;
  REQUIRE(rb_model_geometric_poisson(200, 0.9, 1e-9, &g) == RB_OK);
  rb_tables* t = nullptr;
  REQUIRE(rb_tables_at_value(g, 60, &t) == RB_OK);
  rb_estimate e{};
  REQUIRE(rb_estimate_lrse(t, &e) == RB_OK);
  CHECK(e.psi_index == 59);
  rb_tables_free(t);
  rb_model_free(g);

  const double lambdas[] = {0.2, 0.1};
  const double etas[] = {0.01};
  rb_convergence* conv = nullptr;
  REQUIRE(rb_converge_normal_normal(1, 1, 1, lambdas, 2, 0.5, etas, 1, &conv) == RB_OK);
  CHECK(rb_convergence_target(conv) == doctest::Approx(1.0));
  CHECK(rb_convergence_row_count(conv) == 2);
  rb_convergence_row row{};
  REQUIRE(rb_convergence_get_row(conv, RB_METHOD_LRSE, 1, &row) == RB_OK);
  CHECK(row.error <= 0.1);
  CHECK(std::isnan(row.eta));
  CHECK(rb_convergence_get_row(conv, RB_METHOD_MAP, 2, &row) == RB_ERR_INVALID_ARGUMENT);
  CHECK(rb_convergence_lpl_count(conv) == 2);
  rb_convergence_free(conv);
}

TEST_CASE("simulation") {
  rb_sim_config cfg;
  rb_sim_config_default(&cfg);
  CHECK(cfg.reps == 1000000);
  cfg.reps = 2000;
  cfg.beta = 14;
  rb_method_risk a{}, b{};
  REQUIRE(rb_simulate(&cfg, &a, &b) == RB_OK);
  CHECK(a.sum > b.sum);
  cfg.reps = 0;
  CHECK(rb_simulate(&cfg, &a, &b) == RB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("free functions accept null") {
  rb_model_free(nullptr);
  rb_tables_free(nullptr);
  rb_loss_free(nullptr);
  rb_region_free(nullptr);
  rb_sweep_free(nullptr);
  rb_convergence_free(nullptr);
  rb_string_free(nullptr);
}

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/model_io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace relbelief;

namespace {

void round_trip(const std::string& text) {
  const FiniteModel a = parse_model_json(text);
  const FiniteModel b = parse_model_json(model_to_json(a));
  CHECK(a.same_as(b));
  CHECK(model_to_json(a) == model_to_json(b));
}

std::string error_of(const std::string& text) {
  try {
    parse_model_json(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("table models parse") {
  const FiniteModel m = parse_model_json(R"({
    "theta": ["psi1", "psi2"],
    "prior": [0.95, 0.05],
    "likelihood": [[0.95, 0.05], [0.2, 0.8]]
  })");
  CHECK(m.theta_count() == 2);
  CHECK(m.x_count() == 2);
  CHECK(m.theta()[1].label == "psi2");
  CHECK(m.likelihood(1, 1) == 0.8);
}

TEST_CASE("point forms") {
  const FiniteModel m = parse_model_json(R"({
    "theta": [0.25, [1, 2], {"label": "c", "coord": [3]}, "d"],
    "prior": [0.25, 0.25, 0.25, 0.25],
    "likelihood": [[1], [1], [1], [1]]
  })");
  CHECK(m.theta()[0].label == "0.25");
  CHECK(m.theta()[0].coord == std::vector<double>{0.25});
  CHECK(m.theta()[1].label == "theta2");
  CHECK(m.theta()[1].coord == std::vector<double>{1, 2});
  CHECK(m.theta()[2].label == "c");
  CHECK(m.theta()[3].coord.empty());
}

TEST_CASE("Bernoulli and binomial families become tables") {
  const FiniteModel b = parse_model_json(R"({
    "theta": ["a", "b"], "prior": [0.5, 0.5],
    "likelihood": {"family": "bernoulli", "p": [0.05, 0.8]}
  })");
  CHECK(b.x_count() == 2);
  CHECK(b.likelihood(0, 1) == 0.05);
  CHECK(b.likelihood(1, 0) == doctest::Approx(0.2));
  const FiniteModel n = parse_model_json(R"({
    "theta": ["a"], "prior": [1],
    "likelihood": {"family": "binomial", "trials": 10, "p": [0.3]}
  })");
  CHECK(n.x_count() == 11);
  CHECK(n.likelihood(0, 3) == doctest::Approx(120 * std::pow(0.3, 3) * std::pow(0.7, 7)).epsilon(1e-13));
  CHECK(n.rows_stochastic());
}

TEST_CASE("normal family is a density") {
  const FiniteModel m = parse_model_json(R"({
    "theta": ["a", "b"], "prior": [0.5, 0.5],
    "likelihood": {"family": "normal", "mean": [0, 1], "sd": [1, 1]}
  })");
  CHECK_FALSE(m.has_table());
  const auto t = belief_tables(m, Observation::at_value(0.5));
  CHECK(t.marg_post[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("psi maps, kernels and truncation") {
  const FiniteModel m = parse_model_json(R"({
    "theta": ["t1", "t2", "t3"], "prior": [0.2, 0.3, 0.5],
    "likelihood": [[0.5, 0.5], [0.1, 0.9], [0.7, 0.3]],
    "x_values": [10, 20],
    "psi": [{"label": "B", "coord": [1]}, {"label": "A", "coord": [0]}],
    "psi_map": ["A", "A", "B"],
    "future_kernel": {"y_values": [0, 1], "rows": [[0.9, 0.1], [0.5, 0.5], [0.3, 0.7]]},
    "truncation": {"truncation_point": 3, "tail_mass_bound": 1e-10}
  })");
  CHECK(m.psi_count() == 2);
  CHECK(m.psi()[0].label == "B");
  CHECK(m.psi_of(0) == 1);
  CHECK(m.marginal_prior()[1] == doctest::Approx(0.5));
  CHECK(m.resolve_x(20) == 1);
  REQUIRE(m.future_kernel().has_value());
  CHECK(m.future_kernel()->at(2, 0, 1) == 0.7);
  CHECK(m.truncation()->truncation_point == 3);
}

TEST_CASE("round trips") {
  round_trip(R"({"theta": ["a", "b"], "prior": [0.3, 0.7], "likelihood": [[0.1, 0.9], [0.6, 0.4]]})");
  round_trip(R"({"theta": ["a", "b"], "prior": [0.3, 0.7], "likelihood": {"family": "bernoulli", "p": [0.1, 0.6]}})");
  round_trip(R"({"theta": ["a"], "prior": [1], "likelihood": {"family": "binomial", "trials": 4, "p": [0.3]}})");
  round_trip(R"({"theta": [0.1, 0.2], "prior": [0.5, 0.5], "likelihood": {"family": "normal", "mean": [0, 1], "sd": [1, 2]}})");
  round_trip(R"({
    "theta": ["t1", "t2"], "prior": [0.4, 0.6], "likelihood": [[0.5, 0.5], [0.1, 0.9]],
    "psi_map": ["A", "A"],
    "future_kernel": {"rows": [[[0.9, 0.1], [0.2, 0.8]], [[0.5, 0.5], [0.3, 0.7]]]},
    "truncation": {"truncation_point": 2, "tail_mass_bound": 0}
  })");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FiniteModel m = rbtest::random_model(seed);
    const FiniteModel back = parse_model_json(model_to_json(m));
    CHECK(m.same_as(back));
  }
}

TEST_CASE("errors name the field") {
  CHECK(error_of("{").rfind("model:", 0) == 0);
  CHECK(error_of("[]").rfind("model:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "likelihood": [[1]]})").rfind("prior:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a", "b"], "prior": [0.5, "x"], "likelihood": [[1], [1]]})").rfind("prior:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a", "b"], "prior": [0.5, 0.4], "likelihood": [[1], [1]]})").rfind("prior:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a", "b"], "prior": [0.5, 0.5], "likelihood": [[1, 0], [1]]})").rfind("likelihood:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": {"family": "cauchy"}})").rfind("likelihood:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": {"family": "bernoulli", "p": [1.5]}})").rfind("likelihood.p:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": [[1]], "psi": ["A", "A"]})").rfind("psi:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": [[1]], "psi": ["A"], "psi_map": ["B"]})").rfind("psi_map:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": [[1]], "future_kernel": {"rows": [[0.5, 0.6]]}})").rfind("future_kernel:", 0) == 0);
  CHECK(error_of(R"({"theta": ["a"], "prior": [1], "likelihood": [[1]], "truncation": {"tail_mass_bound": 0.1}})").rfind("truncation:", 0) == 0);
  CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), Error);
}

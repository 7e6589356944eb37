// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

// relbelief: command-line front end to the relbelief C library.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "relbelief.h"

namespace {

using nlohmann::json;

void add_observation(CLI::App* sub, rbcli::ObservationOptions& o) {
  sub->add_option("--model", o.model, "Model spec file (JSON)")->required()->check(CLI::ExistingFile);
  auto* x = sub->add_option("--x", o.x, "Observed value");
  auto* xi = sub->add_option("--x-index", o.x_index, "Observed sample point by index");
  x->excludes(xi);
}

// Every option of the subcommand, as given or defaulted.
json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt == sub->get_help_ptr()) continue;
    const std::string key = opt->get_single_name();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (results.size() == 1 && opt->get_items_expected_max() <= 1) {
        cfg[key] = results[0];
      } else {
        cfg[key] = results;
      }
    } else if (!opt->get_default_str().empty()) {
      cfg[key] = opt->get_default_str();
    } else {
      cfg[key] = nullptr;
    }
  }
  return cfg;
}

void write_manifest(const std::filesystem::path& dir, const json& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / "manifest.json");
  if (!out) {
    std::cerr << "error: cannot write " << (dir / "manifest.json").string() << "\n";
    return;
  }
  out << manifest.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative belief inference: estimators, credible regions, discretization "
               "experiments and predictive simulations."};
  app.set_version_flag("--version", std::string(rb_version()));
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_dir;
  app.add_option("--output-dir", output_dir, "Directory for CSV, JSON and manifest artifacts");

  rbcli::ValidateOptions validate;
  rbcli::EstimateOptions estimate;
  rbcli::RegionOptions region;
  rbcli::ClassifyOptions classify;
  rbcli::PredictOptions predict;
  rbcli::SimulateOptions simulate;
  rbcli::ConvergeOptions converge;
  std::optional<std::uint64_t> seed;
  std::function<rbcli::Report()> run;

  auto* v = app.add_subcommand("validate", "Check a model spec and report its supports");
  v->add_option("--model", validate.model, "Model spec file (JSON)")->required()->check(CLI::ExistingFile);
  v->add_option("--write", validate.write, "Write the normalized model spec to this file");
  v->footer(rbcli::kModelSchema);
  v->callback([&] { run = [&] { return rbcli::run_validate(validate); }; });

  auto* e = app.add_subcommand("estimate", "LRSE, MAP or Bayes-rule estimate at one observation");
  add_observation(e, estimate.obs);
  e->add_option("--estimator", estimate.estimator, "lrse, map or bayes")
      ->check(CLI::IsMember({"lrse", "map", "bayes"}))
      ->capture_default_str();
  e->add_option("--loss", estimate.loss,
                "zero-one, prior-based, capped:<eta>, ball:<lambda>, weighted:<file>, "
                "discretized:<lambda>:<eta>")
      ->capture_default_str();
  e->footer(rbcli::kModelSchema);
  e->callback([&] { run = [&] { return rbcli::run_estimate(estimate); }; });

  auto* r = app.add_subcommand("region", "Credible region at one observation");
  add_observation(r, region.obs);
  r->add_option("--family", region.family, "hpd, rs or lpl")
      ->check(CLI::IsMember({"hpd", "rs", "lpl"}))
      ->capture_default_str();
  r->add_option("--gamma", region.gamma, "Credibility level in (0, 1]")->capture_default_str();
  r->add_option("--loss", region.loss, "Loss for lpl regions")->capture_default_str();
  r->add_option("--sweep", region.sweep,
                "eta=<list>: decreasing caps; compares lpl regions under capped:<eta> with rs regions");
  r->footer(rbcli::kModelSchema);
  r->callback([&] { run = [&] { return rbcli::run_region(region); }; });

  auto* c = app.add_subcommand("classify", "Two-class Bernoulli classifier in closed form");
  c->add_option("--psi1", classify.psi1, "Success probability of class psi1")->capture_default_str();
  c->add_option("--psi2", classify.psi2, "Success probability of class psi2")->capture_default_str();
  c->add_option("--epsilon", classify.epsilon, "Prior probability of psi2")->capture_default_str();
  c->add_option("--x", classify.x, "Observation, 0 or 1 (default: both)")->check(CLI::Range(0, 1));
  c->add_option("--method", classify.method, "map, lrse or both")
      ->check(CLI::IsMember({"map", "lrse", "both"}))
      ->capture_default_str();
  c->callback([&] { run = [&] { return rbcli::run_classify(classify); }; });

  auto* p = app.add_subcommand("predict", "Closed-form predictive class or regression estimates");
  p->add_option("--kind", predict.kind, "class or regression")
      ->check(CLI::IsMember({"class", "regression"}))
      ->capture_default_str();
  p->add_option("--method", predict.method, "map, lrse or both")
      ->check(CLI::IsMember({"map", "lrse", "both"}))
      ->capture_default_str();
  p->add_option("--alpha", predict.alpha, "Beta prior alpha")->capture_default_str();
  p->add_option("--beta", predict.beta, "Beta prior beta")->capture_default_str();
  p->add_option("--n", predict.n, "Number of past labels")->capture_default_str();
  p->add_option("--cbar", predict.cbar, "Mean of the past labels")->capture_default_str();
  p->add_option("--mu", predict.mu, "Class-1 feature mean (features are N(c mu, 1))")->capture_default_str();
  auto* xn = p->add_option("--x-new", predict.x_new, "Feature of the new case");
  auto* fr = p->add_option("--f-ratio", predict.f_ratio, "f1/f0 at the new case");
  xn->excludes(fr);
  p->add_option("--design", predict.design, "Regression JSON file with X, y, w, sigma2, tau2");
  p->add_option("--X", predict.X, "Design matrix, rows separated by ';' and entries by ','");
  p->add_option("--y", predict.y, "Responses")->delimiter(',');
  p->add_option("--w", predict.w, "Prediction covariates")->delimiter(',');
  p->add_option("--sigma2", predict.sigma2, "Error variance")->capture_default_str();
  p->add_option("--tau2", predict.tau2, "Prior variance of the coefficients")->capture_default_str();
  p->callback([&] { run = [&] { return rbcli::run_predict(predict); }; });

  auto* s = app.add_subcommand("simulate-table1", "Monte Carlo misclassification risks of MAP and LRSE");
  s->add_option("--reps", simulate.reps, "Replications per (beta, class) cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--seed", simulate.seed, "64-bit seed")->capture_default_str();
  s->add_option("--mu", simulate.mu, "Class-1 feature mean")->capture_default_str();
  s->add_option("--n", simulate.n, "Number of past labels")->capture_default_str();
  s->add_option("--alphas,--alpha", simulate.alphas, "Beta prior alpha values")->delimiter(',')->capture_default_str();
  s->add_option("--betas,--beta", simulate.betas, "Beta prior beta values")->delimiter(',')->capture_default_str();
  s->add_option("--protocol", simulate.protocol,
                "prior: epsilon from its prior; conditional: epsilon given the new class")
      ->check(CLI::IsMember({"prior", "conditional"}))
      ->capture_default_str();
  s->add_option("--threads", simulate.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->callback([&] {
    seed = simulate.seed;
    run = [&] { return rbcli::run_simulate(simulate); };
  });

  auto* g = app.add_subcommand("converge", "Grid-refinement experiments on a continuous testbed");
  g->add_option("--testbed", converge.testbed, "normal-normal")
      ->check(CLI::IsMember({"normal-normal"}))
      ->capture_default_str();
  g->add_option("--tau", converge.tau, "Prior standard deviation")->capture_default_str();
  g->add_option("--sigma", converge.sigma, "Sampling standard deviation")->capture_default_str();
  g->add_option("--x", converge.x, "Observed value")->capture_default_str();
  g->add_option("--lambdas", converge.lambdas, "Bin widths")->delimiter(',')->capture_default_str();
  g->add_option("--gamma", converge.gamma, "Credibility level for the region distances")->capture_default_str();
  g->add_option("--etas", converge.etas, "Caps for the lpl regions")->delimiter(',')->capture_default_str();
  g->callback([&] { run = [&] { return rbcli::run_converge(converge); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  json manifest = {{"subcommand", sub->get_name()},
                   {"config", resolved_config(sub)},
                   {"seed", seed ? json(*seed) : json(nullptr)},
                   {"tool_version", rb_version()},
                   {"artifacts", json::array()}};
  int exit_code = 0;
  try {
    const rbcli::Report report = run();
    if (!output_dir.empty()) {
      for (const auto& path : report.write(output_dir, sub->get_name())) manifest["artifacts"].push_back(path);
    }
    manifest["status"] = "ok";
  } catch (const rbcli::Failure& f) {
    std::cerr << "error: " << f.what() << "\n";
    if (std::string(f.what()).rfind("validation:", 0) == 0) {
      std::cerr << "\n" << rbcli::kModelSchema << "\n";
    }
    exit_code = f.exit_code();
    manifest["status"] = "error";
    manifest["error"] = f.what();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    exit_code = 1;
    manifest["status"] = "error";
    manifest["error"] = ex.what();
  }
  manifest["exit_code"] = exit_code;
  manifest["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!output_dir.empty()) write_manifest(output_dir, manifest);
  return exit_code;
}

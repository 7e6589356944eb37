// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace rbcli {
namespace {

using nlohmann::json;

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Model = std::unique_ptr<rb_model, Deleter<rb_model, rb_model_free>>;
using Tables = std::unique_ptr<rb_tables, Deleter<rb_tables, rb_tables_free>>;
using Loss = std::unique_ptr<rb_loss, Deleter<rb_loss, rb_loss_free>>;
using Region = std::unique_ptr<rb_region, Deleter<rb_region, rb_region_free>>;
using Sweep = std::unique_ptr<rb_sweep, Deleter<rb_sweep, rb_sweep_free>>;
using Convergence = std::unique_ptr<rb_convergence, Deleter<rb_convergence, rb_convergence_free>>;

[[noreturn]] void usage(const std::string& msg) { throw Failure(2, msg); }

Model load_model(const std::string& path) {
  rb_model* m = nullptr;
  check(rb_model_load(path.c_str(), &m));
  Model model(m);
  for (std::size_t i = 0; i < rb_model_warning_count(m); ++i) {
    std::cerr << "warning: " << rb_model_warning(m, i) << "\n";
  }
  return model;
}

Tables load_tables(const rb_model* model, const ObservationOptions& o) {
  rb_tables* t = nullptr;
  if (o.x_index) {
    check(rb_tables_at_index(model, *o.x_index, &t));
  } else if (o.x) {
    if (rb_model_x_count(model) > 0) {
      std::size_t index = 0;
      check(rb_model_resolve_x(model, *o.x, &index));
      check(rb_tables_at_index(model, index, &t));
    } else {
      check(rb_tables_at_value(model, *o.x, &t));
    }
  } else {
    usage("one of --x or --x-index is required");
  }
  return Tables(t);
}

Loss parse_loss(const std::string& spec) {
  rb_loss* l = nullptr;
  check(rb_loss_parse(spec.c_str(), &l));
  return Loss(l);
}

std::string label(const rb_tables* t, std::size_t j) { return rb_tables_psi_label(t, j); }

std::string member_list(const rb_tables* t, const std::size_t* members, std::size_t count) {
  std::string out = "{";
  for (std::size_t i = 0; i < count; ++i) out += (i ? ", " : "") + label(t, members[i]);
  return out + "}";
}

json member_labels(const rb_tables* t, const std::size_t* members, std::size_t count) {
  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) out.push_back(label(t, members[i]));
  return out;
}

std::vector<rb_method> methods(const std::string& name) {
  if (name == "map") return {RB_METHOD_MAP};
  if (name == "lrse") return {RB_METHOD_LRSE};
  if (name == "both") return {RB_METHOD_MAP, RB_METHOD_LRSE};
  usage("unknown method '" + name + "' (expected map, lrse or both)");
}

const char* method_name(rb_method m) { return m == RB_METHOD_MAP ? "map" : "lrse"; }

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      usage("'" + token + "' is not a number");
    }
  }
  return out;
}

// Rows separated by ';', entries by ','.
std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::string row;
  std::istringstream in(text);
  while (std::getline(in, row, ';')) rows.push_back(parse_numbers(row));
  return rows;
}

std::string yes_no(int flag) { return flag ? "yes" : "no"; }

}  // namespace

const char* const kModelSchema = R"(Model spec (JSON):
  theta       labels, numbers, coordinate arrays or {"label", "coord"} objects
  prior       positive weights, one per theta (sum within 1e-2 of 1; renormalized)
  likelihood  matrix with one row per theta and one column per sample point, or
              {"family": "bernoulli", "p": [...]}
              {"family": "binomial", "trials": n, "p": [...]}
              {"family": "normal", "mean": [...], "sd": [...]}
  x_values    optional values of the sample points (default 0, 1, ...)
  psi_map     optional psi label per theta (default psi = theta)
  psi         optional [{"label", "coord"}] fixing psi order and coordinates
  future_kernel  optional {"y_values": [...], "rows": [[...] per theta]})";

void check(rb_status status) {
  if (status == RB_OK) return;
  int code = 1;
  switch (status) {
    case RB_ERR_VALIDATION:
    case RB_ERR_INVALID_ARGUMENT:
    case RB_ERR_NULL_ARGUMENT:
    case RB_ERR_UNKNOWN_PSI:
    case RB_ERR_NON_STOCHASTIC_KERNEL:
    case RB_ERR_NOT_ATTAINABLE:
    case RB_ERR_SINGULAR_DESIGN:
      code = 2;
      break;
    default:
      break;
  }
  throw Failure(code, std::string(rb_status_name(status)) + ": " + rb_last_error());
}

Report run_validate(const ValidateOptions& o) {
  const Model model = load_model(o.model);
  const rb_model* m = model.get();
  std::cout << "model OK: " << rb_model_theta_count(m) << " theta points, " << rb_model_psi_count(m)
            << " psi points, ";
  if (rb_model_x_count(m) > 0) {
    std::cout << rb_model_x_count(m) << " sample points\n";
  } else {
    std::cout << "density likelihood\n";
  }

  Report r;
  Table psi{"psi", {"psi", "label"}, {}};
  for (std::size_t j = 0; j < rb_model_psi_count(m); ++j) {
    psi.add({static_cast<long long>(j), std::string(rb_model_psi_label(m, j))});
  }
  r.tables.push_back(std::move(psi));
  json warnings = json::array();
  for (std::size_t i = 0; i < rb_model_warning_count(m); ++i) warnings.push_back(rb_model_warning(m, i));
  r.summary = {{"theta_count", rb_model_theta_count(m)},
               {"psi_count", rb_model_psi_count(m)},
               {"x_count", rb_model_x_count(m)},
               {"warnings", warnings}};

  if (!o.write.empty()) {
    char* text = nullptr;
    check(rb_model_to_json(m, &text));
    std::unique_ptr<char, Deleter<char, rb_string_free>> owned(text);
    std::ofstream out(o.write);
    if (!out) throw Failure(1, "cannot write " + o.write);
    out << text << "\n";
    r.summary["written"] = o.write;
  }
  return r;
}

Report run_estimate(const EstimateOptions& o) {
  const Model model = load_model(o.obs.model);
  const Tables tables = load_tables(model.get(), o.obs);
  const rb_tables* t = tables.get();
  const Loss loss = parse_loss(o.loss);

  rb_estimate e{};
  if (o.estimator == "lrse") {
    check(rb_estimate_lrse(t, &e));
  } else if (o.estimator == "map") {
    check(rb_estimate_map(t, &e));
  } else if (o.estimator == "bayes") {
    check(rb_estimate_bayes(loss.get(), t, &e));
  } else {
    usage("unknown estimator '" + o.estimator + "' (expected lrse, map or bayes)");
  }

  std::cout << label(t, e.psi_index) << "\n";
  std::cout << o.estimator << " index " << e.psi_index << ", criterion " << format_number(e.criterion_value)
            << (e.tie ? ", tie among " + std::to_string(e.optimal_count) + " values (lowest index returned)" : "")
            << "\n";

  Report r;
  Table table{"tables", {"psi", "label", "marg_prior", "marg_post", "rb", "posterior_risk"}, {}};
  for (std::size_t j = 0; j < rb_tables_size(t); ++j) {
    double risk = 0.0;
    check(rb_posterior_risk(loss.get(), t, j, &risk));
    table.add({static_cast<long long>(j), label(t, j), rb_tables_marg_prior(t)[j],
               rb_tables_marg_post(t)[j], rb_tables_rb(t)[j], risk});
  }
  r.tables.push_back(std::move(table));
  r.summary = {{"estimator", o.estimator},
               {"loss", rb_loss_describe(loss.get())},
               {"psi_index", e.psi_index},
               {"label", label(t, e.psi_index)},
               {"criterion_value", e.criterion_value},
               {"tie", e.tie != 0},
               {"optimal_count", e.optimal_count},
               {"evidence", rb_tables_evidence(t)}};
  return r;
}

Report run_region(const RegionOptions& o) {
  const Model model = load_model(o.obs.model);
  const Tables tables = load_tables(model.get(), o.obs);
  const rb_tables* t = tables.get();
  const Loss loss = parse_loss(o.loss);

  rb_region_family family;
  if (o.family == "hpd") {
    family = RB_REGION_HPD;
  } else if (o.family == "rs") {
    family = RB_REGION_RS;
  } else if (o.family == "lpl") {
    family = RB_REGION_LPL;
  } else {
    usage("unknown region family '" + o.family + "' (expected hpd, rs or lpl)");
  }
  rb_region* raw = nullptr;
  check(rb_region_compute(family, loss.get(), t, o.gamma, &raw));
  const Region region(raw);
  const std::size_t* members = rb_region_members(raw);
  const std::size_t count = rb_region_size(raw);

  std::cout << "members: " << member_list(t, members, count) << "\n";
  std::cout << "threshold " << format_number(rb_region_threshold(raw)) << ", posterior content "
            << format_number(rb_region_attained_mass(raw)) << "\n";

  Report r;
  Table table{"region", {"psi", "label", "marg_post", "rb", "member"}, {}};
  std::size_t next = 0;
  for (std::size_t j = 0; j < rb_tables_size(t); ++j) {
    const bool in = next < count && members[next] == j;
    if (in) ++next;
    table.add({static_cast<long long>(j), label(t, j), rb_tables_marg_post(t)[j], rb_tables_rb(t)[j],
               static_cast<long long>(in)});
  }
  r.tables.push_back(std::move(table));
  r.summary = {{"family", o.family},
               {"gamma", o.gamma},
               {"members", member_labels(t, members, count)},
               {"threshold", rb_region_threshold(raw)},
               {"attained_mass", rb_region_attained_mass(raw)}};
  if (family == RB_REGION_LPL) r.summary["loss"] = rb_loss_describe(loss.get());

  if (!o.sweep.empty()) {
    const std::string list = o.sweep.rfind("eta=", 0) == 0 ? o.sweep.substr(4) : o.sweep;
    const std::vector<double> etas = parse_numbers(list);
    rb_sweep* sraw = nullptr;
    check(rb_eta_sweep(t, o.gamma, etas.data(), etas.size(), &sraw));
    const Sweep sweep(sraw);
    Table st{"sweep", {"eta", "members", "attained_mass"}, {}};
    for (std::size_t i = 0; i < rb_sweep_entry_count(sraw); ++i) {
      const rb_region* e = rb_sweep_entry_region(sraw, i);
      const std::string labels = member_list(t, rb_region_members(e), rb_region_size(e));
      st.add({rb_sweep_entry_eta(sraw, i), labels, rb_region_attained_mass(e)});
      std::cout << "eta " << format_number(rb_sweep_entry_eta(sraw, i)) << ": " << labels << "\n";
    }
    r.tables.push_back(std::move(st));
    const std::size_t* lo = nullptr;
    const std::size_t* hi = nullptr;
    const std::size_t n_lo = rb_sweep_liminf(sraw, &lo);
    const std::size_t n_hi = rb_sweep_limsup(sraw, &hi);
    const int flags = rb_sweep_flags(sraw);
    const rb_region* ref = rb_sweep_reference(sraw);
    const rb_region* ref_next = rb_sweep_reference_next(sraw);
    std::cout << "C_gamma " << member_list(t, rb_region_members(ref), rb_region_size(ref))
              << " within lim inf " << member_list(t, lo, n_lo) << ": " << yes_no(flags & 1) << "\n"
              << "lim sup " << member_list(t, hi, n_hi) << " within C at next content "
              << format_number(rb_sweep_gamma_next(sraw)) << ": " << yes_no(flags & 2) << "\n"
              << "converged to C_gamma: " << yes_no(flags & 4) << "\n";
    r.summary["sweep"] = {
        {"gamma_next", rb_sweep_gamma_next(sraw)},
        {"reference", member_labels(t, rb_region_members(ref), rb_region_size(ref))},
        {"reference_next", member_labels(t, rb_region_members(ref_next), rb_region_size(ref_next))},
        {"liminf", member_labels(t, lo, n_lo)},
        {"limsup", member_labels(t, hi, n_hi)},
        {"lower_inclusion", (flags & 1) != 0},
        {"upper_inclusion", (flags & 2) != 0},
        {"converged", (flags & 4) != 0}};
  }
  return r;
}

Report run_classify(const ClassifyOptions& o) {
  const rb_classifier model{o.psi1, o.psi2, o.epsilon};
  std::vector<int> xs = o.x ? std::vector<int>{*o.x} : std::vector<int>{0, 1};
  Report r;
  Table decisions{"decisions", {"method", "x", "decision", "tie"}, {}};
  Table risks{"risks", {"method", "error_psi1", "error_psi2", "sum", "prior_weighted"}, {}};
  for (rb_method m : methods(o.method)) {
    for (int x : xs) {
      std::size_t d = 0;
      int tie = 0;
      check(rb_classify(&model, x, m, &d, &tie));
      const std::string name = d == 0 ? "psi1" : "psi2";
      std::cout << method_name(m) << " x=" << x << " -> " << name << (tie ? " (tie)" : "") << "\n";
      decisions.add({method_name(m), static_cast<long long>(x), name, static_cast<long long>(tie)});
    }
    rb_classifier_risk risk{};
    check(rb_classifier_risks(&model, m, &risk));
    std::cout << method_name(m) << " errors: " << format_number(risk.error_psi1) << " + "
              << format_number(risk.error_psi2) << " = " << format_number(risk.sum) << "\n";
    risks.add({method_name(m), risk.error_psi1, risk.error_psi2, risk.sum, risk.prior_weighted});
  }
  r.tables.push_back(std::move(decisions));
  r.tables.push_back(std::move(risks));
  r.summary = {{"psi1", o.psi1}, {"psi2", o.psi2}, {"epsilon", o.epsilon},
               {"map_threshold", o.psi1 + o.psi2 > 0 ? o.psi1 / (o.psi1 + o.psi2) : NAN}};
  return r;
}

namespace {

Report predict_class(const PredictOptions& o) {
  double f_ratio = 0.0;
  if (o.f_ratio) {
    f_ratio = *o.f_ratio;
  } else if (o.x_new) {
    f_ratio = rb_f_ratio_gaussian(*o.x_new, o.mu);
  } else {
    usage("class prediction needs --f-ratio or --x-new");
  }
  const rb_class_predictor model{o.alpha, o.beta, o.n, o.cbar, f_ratio};
  Report r;
  Table table{"prediction", {"method", "class", "f_ratio", "threshold_x"}, {}};
  for (rb_method m : methods(o.method)) {
    int c = 0;
    check(rb_predict_class(&model, m, &c));
    double threshold = NAN;
    if (o.mu > 0.0) check(rb_class_threshold(o.alpha, o.beta, o.n, o.cbar, o.mu, m, &threshold));
    std::cout << method_name(m) << ": class " << c;
    if (!std::isnan(threshold)) std::cout << " (class 1 iff x >= " << format_number(threshold) << ")";
    std::cout << "\n";
    table.add({method_name(m), static_cast<long long>(c), f_ratio, threshold});
  }
  r.tables.push_back(std::move(table));
  r.summary = {{"alpha", o.alpha}, {"beta", o.beta}, {"n", o.n}, {"cbar", o.cbar}, {"f_ratio", f_ratio}};
  return r;
}

Report predict_regression(const PredictOptions& o) {
  std::vector<std::vector<double>> X;
  std::vector<double> y = o.y;
  std::vector<double> w = o.w;
  double sigma2 = o.sigma2;
  double tau2 = o.tau2;
  if (!o.design.empty()) {
    std::ifstream in(o.design);
    if (!in) throw Failure(1, "io: cannot open design file " + o.design);
    json doc;
    try {
      doc = json::parse(in);
      X = doc.at("X").get<std::vector<std::vector<double>>>();
      y = doc.at("y").get<std::vector<double>>();
      w = doc.at("w").get<std::vector<double>>();
      sigma2 = doc.value("sigma2", sigma2);
      tau2 = doc.value("tau2", tau2);
    } catch (const json::exception& e) {
      usage("design file " + o.design + ": " + e.what());
    }
  } else if (!o.X.empty()) {
    X = parse_matrix(o.X);
  } else {
    usage("regression prediction needs --design or --X");
  }
  const std::size_t n = X.size();
  const std::size_t k = n > 0 ? X[0].size() : 0;
  std::vector<double> flat;
  for (const auto& row : X) {
    if (row.size() != k) usage("design matrix rows have different lengths");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (y.size() != n) usage("y needs " + std::to_string(n) + " values");
  if (w.size() != k) usage("w needs " + std::to_string(k) + " values");

  rb_regression_result res{};
  check(rb_regression(flat.data(), n, k, y.data(), w.data(), sigma2, tau2, &res));
  Report r;
  Table table{"regression", {"quantity", "value"}, {}};
  const std::pair<const char*, double> values[] = {
      {"psi_map", res.psi_map},         {"psi_lrse", res.psi_lrse},
      {"mu_post_psi", res.mu_post_psi}, {"var_prior_psi", res.var_prior_psi},
      {"var_post_psi", res.var_post_psi}, {"z_map", res.z_map},
      {"z_lrse", res.z_lrse},           {"var_prior_z", res.var_prior_z},
      {"var_post_z", res.var_post_z}};
  for (const auto& [name, v] : values) {
    std::cout << name << " = " << format_number(v) << "\n";
    table.add({name, v});
    r.summary[name] = v;
  }
  r.tables.push_back(std::move(table));
  return r;
}

}  // namespace

Report run_predict(const PredictOptions& o) {
  if (o.kind == "class") return predict_class(o);
  if (o.kind == "regression") return predict_regression(o);
  usage("unknown kind '" + o.kind + "' (expected class or regression)");
}

Report run_simulate(const SimulateOptions& o) {
  rb_protocol protocol;
  if (o.protocol == "prior") {
    protocol = RB_PROTOCOL_PRIOR;
  } else if (o.protocol == "conditional") {
    protocol = RB_PROTOCOL_CONDITIONAL;
  } else {
    usage("unknown protocol '" + o.protocol + "' (expected prior or conditional)");
  }
  Report r;
  Table table{"risks",
              {"beta", "method", "M0", "M1", "sum", "se", "alpha", "se_M0", "se_M1", "errors_M0",
               "errors_M1", "reps"},
              {}};
  std::printf("n = %d, mu = %g, reps = %llu, seed = %llu, protocol = %s\n", o.n, o.mu,
              static_cast<unsigned long long>(o.reps), static_cast<unsigned long long>(o.seed),
              o.protocol.c_str());
  std::printf("%6s %6s   %-30s %-30s\n", "alpha", "beta", "MAP  M0 + M1 = sum (se)",
              "LRSE  M0 + M1 = sum (se)");
  for (double alpha : o.alphas) {
    for (double beta : o.betas) {
      rb_sim_config cfg;
      rb_sim_config_default(&cfg);
      cfg.alpha = alpha;
      cfg.beta = beta;
      cfg.mu = o.mu;
      cfg.n = o.n;
      cfg.reps = o.reps;
      cfg.seed = o.seed;
      cfg.protocol = protocol;
      cfg.threads = o.threads;
      rb_method_risk map{}, lrse{};
      check(rb_simulate(&cfg, &map, &lrse));
      std::printf("%6g %6g   %.3f + %.3f = %.3f (%.3f)   %.3f + %.3f = %.3f (%.3f)\n", alpha, beta,
                  map.m0, map.m1, map.sum, map.se_sum, lrse.m0, lrse.m1, lrse.sum, lrse.se_sum);
      for (const auto& [name, risk] : {std::pair{"map", map}, std::pair{"lrse", lrse}}) {
        table.add({beta, name, risk.m0, risk.m1, risk.sum, risk.se_sum, alpha, risk.se0, risk.se1,
                   static_cast<long long>(risk.errors0), static_cast<long long>(risk.errors1),
                   static_cast<long long>(o.reps)});
      }
    }
  }
  r.tables.push_back(std::move(table));
  r.summary = {{"reps", o.reps}, {"seed", o.seed}, {"mu", o.mu}, {"n", o.n}, {"protocol", o.protocol}};
  return r;
}

Report run_converge(const ConvergeOptions& o) {
  if (o.testbed != "normal-normal") usage("unknown testbed '" + o.testbed + "' (expected normal-normal)");
  rb_convergence* raw = nullptr;
  check(rb_converge_normal_normal(o.tau, o.sigma, o.x, o.lambdas.data(), o.lambdas.size(), o.gamma,
                                  o.etas.data(), o.etas.size(), &raw));
  const Convergence conv(raw);
  const double target = rb_convergence_target(raw);
  std::cout << "closed-form LRSE " << format_number(target) << "\n";

  Report r;
  Table est{"estimates", {"method", "lambda", "eta", "bins", "estimate", "error", "within_lambda"}, {}};
  for (rb_method m : {RB_METHOD_MAP, RB_METHOD_LRSE}) {
    const char* name = m == RB_METHOD_MAP ? "bayes-capped" : "grid-lrse";
    for (std::size_t i = 0; i < rb_convergence_row_count(raw); ++i) {
      rb_convergence_row row{};
      check(rb_convergence_get_row(raw, m, i, &row));
      const bool ok = row.error <= row.lambda;
      std::printf("%-12s lambda %-8g estimate %-14.12g error %-10.3g %s\n", name, row.lambda, row.estimate,
                  row.error, ok ? "<= lambda" : "> lambda");
      est.add({name, row.lambda, row.eta, static_cast<long long>(row.bins), row.estimate, row.error,
               static_cast<long long>(ok)});
    }
  }
  Table reg{"regions", {"region", "lambda", "eta", "distance", "attained_mass"}, {}};
  for (std::size_t i = 0; i < rb_convergence_rs_count(raw); ++i) {
    rb_distance_row row{};
    check(rb_convergence_rs_row(raw, i, &row));
    std::printf("rs  lambda %-8g distance %.6g\n", row.lambda, row.distance);
    reg.add({"rs", row.lambda, row.eta, row.distance, row.attained_mass});
  }
  for (std::size_t i = 0; i < rb_convergence_lpl_count(raw); ++i) {
    rb_distance_row row{};
    check(rb_convergence_lpl_row(raw, i, &row));
    std::printf("lpl lambda %-8g eta %-8g distance %.6g\n", row.lambda, row.eta, row.distance);
    reg.add({"lpl", row.lambda, row.eta, row.distance, row.attained_mass});
  }
  r.tables.push_back(std::move(est));
  r.tables.push_back(std::move(reg));
  r.summary = {{"testbed", o.testbed},
               {"target", target},
               {"gamma", o.gamma},
               {"reference_lambda", rb_convergence_reference_lambda(raw)}};
  return r;
}

}  // namespace rbcli

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/model_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace relbelief {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  fail(ErrorCode::Validation, field + ": " + msg);
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) invalid(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) invalid(field, "expected numbers, found " + std::string(v.type_name()));
    out.push_back(v.get<double>());
  }
  return out;
}

std::string number_label(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ParamPoint parse_point(const json& j, std::size_t i, const std::string& field, const char* stem) {
  if (j.is_string()) return {j.get<std::string>(), {}};
  if (j.is_number()) return {number_label(j.get<double>()), {j.get<double>()}};
  if (j.is_array()) return {stem + std::to_string(i + 1), numbers(j, field)};
  if (j.is_object()) {
    ParamPoint p;
    if (!j.contains("label") || !j["label"].is_string()) invalid(field, "point objects need a string label");
    p.label = j["label"].get<std::string>();
    if (j.contains("coord")) p.coord = numbers(j["coord"], field);
    return p;
  }
  invalid(field, "unsupported point of type " + std::string(j.type_name()));
}

json point_json(const ParamPoint& p) {
  json j = {{"label", p.label}};
  if (!p.coord.empty()) j["coord"] = p.coord;
  return j;
}

double normal_density(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

void parse_family(const json& lik, std::size_t n_theta, ModelParts& parts) {
  const std::string family = lik.value("family", "");
  LikelihoodFamily& fam = parts.family;
  if (family == "bernoulli" || family == "binomial") {
    fam.kind = family == "bernoulli" ? LikelihoodFamily::Kind::Bernoulli
                                     : LikelihoodFamily::Kind::Binomial;
    fam.trials = family == "bernoulli" ? 1 : lik.value("trials", 0);
    if (fam.trials < 1) invalid("likelihood", "binomial family needs trials >= 1");
    fam.p = numbers(lik.value("p", json()), "likelihood.p");
    if (fam.p.size() != n_theta) invalid("likelihood.p", "needs one probability per theta");
    const auto n = static_cast<std::size_t>(fam.trials);
    parts.x_count = n + 1;
    parts.likelihood.resize(n_theta * parts.x_count);
    for (std::size_t t = 0; t < n_theta; ++t) {
      const double p = fam.p[t];
      if (!(p >= 0.0 && p <= 1.0)) invalid("likelihood.p", "probabilities must lie in [0, 1]");
      double choose = 1.0;
      for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) choose = choose * static_cast<double>(n - k + 1) / static_cast<double>(k);
        parts.likelihood[t * parts.x_count + k] = choose * std::pow(p, static_cast<double>(k)) *
                                                  std::pow(1.0 - p, static_cast<double>(n - k));
      }
    }
  } else if (family == "normal") {
    fam.kind = LikelihoodFamily::Kind::Normal;
    fam.mean = numbers(lik.value("mean", json()), "likelihood.mean");
    fam.sd = numbers(lik.value("sd", json()), "likelihood.sd");
    if (fam.mean.size() != n_theta || fam.sd.size() != n_theta) {
      invalid("likelihood", "normal family needs one mean and one sd per theta");
    }
    for (double s : fam.sd) {
      if (!(s > 0.0)) invalid("likelihood.sd", "standard deviations must be positive");
    }
    parts.density = [mean = fam.mean, sd = fam.sd](std::size_t t, double x) {
      return normal_density(x, mean[t], sd[t]);
    };
  } else {
    invalid("likelihood", "unknown family '" + family + "' (expected bernoulli, binomial or normal)");
  }
}

FutureKernel parse_kernel(const json& j, std::size_t n_theta) {
  FutureKernel k;
  if (!j.is_object() || !j.contains("rows")) invalid("future_kernel", "expected an object with rows");
  const json& rows = j["rows"];
  if (!rows.is_array() || rows.size() != n_theta) invalid("future_kernel", "needs one row per theta");
  k.x_dependent = !rows.empty() && rows[0].is_array() && !rows[0].empty() && rows[0][0].is_array();
  if (k.x_dependent) {
    k.x_count = rows[0].size();
    for (const auto& per_theta : rows) {
      if (!per_theta.is_array() || per_theta.size() != k.x_count) {
        invalid("future_kernel", "ragged x-dependent rows");
      }
      for (const auto& row : per_theta) {
        auto r = numbers(row, "future_kernel");
        if (k.y_count == 0) k.y_count = r.size();
        if (r.size() != k.y_count) invalid("future_kernel", "ragged rows");
        k.values.insert(k.values.end(), r.begin(), r.end());
      }
    }
  } else {
    for (const auto& row : rows) {
      auto r = numbers(row, "future_kernel");
      if (k.y_count == 0) k.y_count = r.size();
      if (r.size() != k.y_count) invalid("future_kernel", "ragged rows");
      k.values.insert(k.values.end(), r.begin(), r.end());
    }
  }
  if (k.y_count == 0) invalid("future_kernel", "rows are empty");
  if (j.contains("y_values")) {
    k.y_values = numbers(j["y_values"], "future_kernel.y_values");
    if (k.y_values.size() != k.y_count) invalid("future_kernel.y_values", "length differs from the rows");
  } else {
    for (std::size_t y = 0; y < k.y_count; ++y) k.y_values.push_back(static_cast<double>(y));
  }
  return k;
}

}  // namespace

FiniteModel parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Validation, std::string("model: not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) invalid("model", "top level must be an object");
  for (const char* field : {"theta", "prior", "likelihood"}) {
    if (!doc.contains(field)) invalid(field, "missing");
  }

  ModelParts parts;
  const json& theta = doc["theta"];
  if (!theta.is_array()) invalid("theta", "expected an array");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    parts.theta.push_back(parse_point(theta[i], i, "theta", "theta"));
  }
  parts.prior = numbers(doc["prior"], "prior");
  const std::size_t n_theta = parts.theta.size();

  const json& lik = doc["likelihood"];
  if (lik.is_object()) {
    parse_family(lik, n_theta, parts);
  } else if (lik.is_array()) {
    if (lik.size() != n_theta) invalid("likelihood", "needs one row per theta");
    for (const auto& row : lik) {
      auto r = numbers(row, "likelihood");
      if (parts.x_count == 0) parts.x_count = r.size();
      if (r.size() != parts.x_count) invalid("likelihood", "rows have different lengths");
      parts.likelihood.insert(parts.likelihood.end(), r.begin(), r.end());
    }
  } else {
    invalid("likelihood", "expected a matrix or a family object");
  }
  if (doc.contains("x_values")) parts.x_values = numbers(doc["x_values"], "x_values");

  if (doc.contains("psi")) {
    const json& psi = doc["psi"];
    if (!psi.is_array()) invalid("psi", "expected an array");
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      parts.psi.push_back(parse_point(psi[i], i, "psi", "psi"));
      if (seen[parts.psi.back().label]++ > 0) invalid("psi", "duplicate label '" + parts.psi.back().label + "'");
    }
  }
  if (doc.contains("psi_map")) {
    const json& map = doc["psi_map"];
    if (!map.is_array()) invalid("psi_map", "expected an array of labels");
    const bool declared = !parts.psi.empty();
    std::map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < parts.psi.size(); ++j) index.emplace(parts.psi[j].label, j);
    for (const auto& v : map) {
      const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
      auto it = index.find(label);
      if (it == index.end()) {
        if (declared) invalid("psi_map", "label '" + label + "' is not in psi");
        it = index.emplace(label, parts.psi.size()).first;
        parts.psi.push_back({label, {}});
      }
      parts.psi_map.push_back(it->second);
    }
  }
  if (doc.contains("future_kernel")) parts.future_kernel = parse_kernel(doc["future_kernel"], n_theta);
  if (doc.contains("truncation")) {
    const json& t = doc["truncation"];
    parts.truncation = Truncation{t.value("truncation_point", std::size_t{0}),
                                  t.value("tail_mass_bound", 0.0)};
  }
  return FiniteModel::create(std::move(parts));
}

FiniteModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string model_to_json(const FiniteModel& model) {
  json doc;
  json theta = json::array();
  for (const auto& p : model.theta()) theta.push_back(point_json(p));
  doc["theta"] = theta;
  doc["prior"] = std::vector<double>(model.prior().begin(), model.prior().end());

  const LikelihoodFamily& fam = model.family();
  switch (fam.kind) {
    case LikelihoodFamily::Kind::Bernoulli:
      doc["likelihood"] = {{"family", "bernoulli"}, {"p", fam.p}};
      break;
    case LikelihoodFamily::Kind::Binomial:
      doc["likelihood"] = {{"family", "binomial"}, {"trials", fam.trials}, {"p", fam.p}};
      break;
    case LikelihoodFamily::Kind::Normal:
      doc["likelihood"] = {{"family", "normal"}, {"mean", fam.mean}, {"sd", fam.sd}};
      break;
    case LikelihoodFamily::Kind::Callback:
      fail(ErrorCode::InvalidArgument, "a model with a user density callback cannot be serialized");
    case LikelihoodFamily::Kind::Table: {
      json rows = json::array();
      for (std::size_t t = 0; t < model.theta_count(); ++t) {
        std::vector<double> row(model.x_count());
        for (std::size_t x = 0; x < model.x_count(); ++x) row[x] = model.likelihood(t, x);
        rows.push_back(row);
      }
      doc["likelihood"] = rows;
      break;
    }
  }
  if (model.has_table()) {
    doc["x_values"] = std::vector<double>(model.x_values().begin(), model.x_values().end());
  }

  json psi = json::array();
  for (const auto& p : model.psi()) psi.push_back(point_json(p));
  doc["psi"] = psi;
  json map = json::array();
  for (std::size_t t = 0; t < model.theta_count(); ++t) map.push_back(model.psi()[model.psi_of(t)].label);
  doc["psi_map"] = map;

  if (const auto& k = model.future_kernel()) {
    json rows = json::array();
    for (std::size_t t = 0; t < model.theta_count(); ++t) {
      if (k->x_dependent) {
        json per_theta = json::array();
        for (std::size_t x = 0; x < k->x_count; ++x) {
          std::vector<double> row(k->y_count);
          for (std::size_t y = 0; y < k->y_count; ++y) row[y] = k->at(t, x, y);
          per_theta.push_back(row);
        }
        rows.push_back(per_theta);
      } else {
        std::vector<double> row(k->y_count);
        for (std::size_t y = 0; y < k->y_count; ++y) row[y] = k->at(t, 0, y);
        rows.push_back(row);
      }
    }
    doc["future_kernel"] = {{"y_values", k->y_values}, {"rows", rows}};
  }
  if (const auto& t = model.truncation()) {
    doc["truncation"] = {{"truncation_point", t->truncation_point},
                         {"tail_mass_bound", t->tail_mass_bound}};
  }
  return doc.dump(2);
}

}  // namespace relbelief

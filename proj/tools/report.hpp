// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace rbcli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// The result of one subcommand: one or more CSV tables plus a summary that
/// goes into the mirrored JSON report.
struct Report {
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();

  /// Writes <stem>.csv (or <stem>_<table>.csv when there are several tables)
  /// and <stem>.json. Returns the paths written.
  std::vector<std::string> write(const std::filesystem::path& dir, const std::string& stem) const;
};

/// 12 significant digits, '.' decimal separator, "nan"/"inf" spelled out.
std::string format_number(double v);
std::string to_csv(const Table& table);

}  // namespace rbcli

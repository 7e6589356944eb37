// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "core/model.hpp"

namespace relbelief {

// Model spec documents are JSON:
//
//   {
//     "theta": ["a", "b"] | [0.1, 0.3] | [[0, 1], [1, 0]] | [{"label": "a", "coord": [0]}],
//     "prior": [0.5, 0.5],
//     "likelihood": [[0.8, 0.2], [0.3, 0.7]]          (rows per theta)
//                 | {"family": "bernoulli", "p": [...]}
//                 | {"family": "binomial", "trials": 10, "p": [...]}
//                 | {"family": "normal", "mean": [...], "sd": [...]},
//     "x_values": [...],                                (optional, tables only)
//     "psi_map": ["A", "A", "B"],                        (optional, labels per theta)
//     "psi": [{"label": "A", "coord": [0]}, ...],        (optional, psi order and coords)
//     "future_kernel": {"y_values": [0, 1], "rows": [[...], ...]},
//     "truncation": {"truncation_point": 200, "tail_mass_bound": 1e-9}
//   }
//
// A 3-deep "rows" array makes the future kernel depend on x: rows[theta][x][y].

FiniteModel parse_model_json(const std::string& text);
FiniteModel load_model_file(const std::filesystem::path& path);

/// Serializes so that parse_model_json(model_to_json(m)) is same_as(m).
std::string model_to_json(const FiniteModel& model);

}  // namespace relbelief

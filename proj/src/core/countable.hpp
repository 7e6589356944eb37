// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "core/model.hpp"

namespace relbelief {

/// Countable parameter k = 0, 1, 2, ... with geometric prior (1 - r) r^k,
/// truncated at `points` and renormalized. Data are Poisson with mean k + 1,
/// supplied as a density callback, so the LRSE at observed x is k = x - 1.
/// Throws Validation when the discarded tail r^points exceeds `tail_bound`.
FiniteModel geometric_poisson_model(std::size_t points, double ratio,
                                    double tail_bound = 1e-9);

}  // namespace relbelief

// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/losses.hpp"
#include "core/model.hpp"

namespace relbelief {

/// A gamma-credible set over the psi support. `members` is the full super-level
/// set (sub-level for losses) at `threshold`, boundary ties included, so
/// `attained_mass` can exceed `gamma`.
struct CredibleRegion {
  double gamma = 0.0;
  std::vector<std::size_t> members;  // sorted
  double threshold = 0.0;
  double attained_mass = 0.0;
};

/// Highest posterior density region H_gamma.
CredibleRegion hpd_region(const BeliefTables& tables, double gamma);
/// Relative surprise region C_gamma: super-level set of the relative belief ratio.
CredibleRegion rs_region(const BeliefTables& tables, double gamma);
/// Lowest posterior loss region: sub-level set of the posterior risk.
CredibleRegion lpl_region(const LossSpec& loss, const BeliefTables& tables, double gamma);

/// Posterior mass of {psi : rb(psi) <= rb(psi0)}.
double tail_probability(const BeliefTables& tables, std::size_t psi0);

/// Posterior contents of the relative surprise regions, ascending: the gammas
/// at which Pi(C_gamma | x) = gamma exactly. Always ends at 1.
std::vector<double> attainable_gammas(const BeliefTables& tables);
/// True when `gamma` is within 1e-12 of an attainable value.
bool is_attainable(const BeliefTables& tables, double gamma);

/// Posterior mass of the symmetric difference.
double region_distance(const CredibleRegion& a, const CredibleRegion& b, const BeliefTables& tables);

struct EtaSweepEntry {
  double eta = 0.0;
  CredibleRegion region;  // L_{eta,gamma} under the capped prior-based loss
};

struct EtaSweepReport {
  double gamma = 0.0;
  double gamma_next = 0.0;  // next attainable content above gamma (gamma itself at 1)
  CredibleRegion reference;       // C_gamma
  CredibleRegion reference_next;  // C_gamma_next
  std::vector<EtaSweepEntry> entries;
  // Finite-schedule stand-ins for lim inf / lim sup: intersection and union of
  // the members over the trailing half of the schedule.
  std::vector<std::size_t> liminf_members;
  std::vector<std::size_t> limsup_members;
  bool lower_inclusion = false;  // C_gamma within lim inf
  bool upper_inclusion = false;  // lim sup within C_gamma_next
  bool converged = false;        // trailing entries all equal C_gamma
};

/// Lowest posterior loss regions under CappedPriorBased(eta) for a decreasing
/// eta schedule. Throws NotAttainable unless Pi(C_gamma | x) = gamma.
EtaSweepReport eta_sweep(const BeliefTables& tables, double gamma, std::span<const double> etas);

/// Exhaustive check over all subsets B of the psi support that C_gamma has the
/// least prior content among sets with posterior content >= gamma, and the
/// largest ratio Pi(B|x)/Pi(B) among sets of the same prior content. Needs
/// exact attainment and at most 20 psi points.
bool minimal_prior_size_check(const BeliefTables& tables, double gamma);

}  // namespace relbelief

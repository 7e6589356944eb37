// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/regions.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace relbelief {
namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "gamma must lie in [0, 1], got " + to_text(gamma));
  }
}

// Accumulates tie classes in rank order until the posterior content reaches
// gamma. The first class is always taken, which is the gamma -> 0 limit.
CredibleRegion grow_region(std::span<const double> scores, bool descending,
                           const BeliefTables& tables, double gamma) {
  check_gamma(gamma);
  CredibleRegion region;
  region.gamma = gamma;
  NeumaierSum mass;
  for (const auto& group : rank_groups(scores, descending)) {
    for (std::size_t j : group) {
      region.members.push_back(j);
      mass += tables.marg_post[j];
    }
    region.threshold = scores[group.front()];
    // gamma = 1 takes the whole support, zero-posterior points included.
    if (gamma < 1.0 && mass.value() >= gamma - kSumTolerance) break;
  }
  std::sort(region.members.begin(), region.members.end());
  region.attained_mass = std::min(1.0, mass.value());
  return region;
}

std::vector<double> capped_ratio(const BeliefTables& t, double eta) {
  std::vector<double> s(t.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = t.marg_post[j] / std::max(eta, t.marg_prior[j]);
  return s;
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

CredibleRegion hpd_region(const BeliefTables& tables, double gamma) {
  return grow_region(tables.marg_post, true, tables, gamma);
}

CredibleRegion rs_region(const BeliefTables& tables, double gamma) {
  return grow_region(tables.rb, true, tables, gamma);
}

CredibleRegion lpl_region(const LossSpec& loss, const BeliefTables& tables, double gamma) {
  return grow_region(posterior_risks(loss, tables), false, tables, gamma);
}

double tail_probability(const BeliefTables& tables, std::size_t psi0) {
  if (psi0 >= tables.size()) fail(ErrorCode::UnknownPsi, "psi0 is not in the psi support");
  const double ref = tables.rb[psi0];
  NeumaierSum mass;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (tables.rb[j] <= ref || is_tie(ref, tables.rb[j])) mass += tables.marg_post[j];
  }
  return std::min(1.0, mass.value());
}

std::vector<double> attainable_gammas(const BeliefTables& tables) {
  std::vector<double> out;
  NeumaierSum mass;
  for (const auto& group : rank_groups(tables.rb, true)) {
    for (std::size_t j : group) mass += tables.marg_post[j];
    out.push_back(std::min(1.0, mass.value()));
  }
  out.back() = 1.0;
  return out;
}

bool is_attainable(const BeliefTables& tables, double gamma) {
  for (double g : attainable_gammas(tables)) {
    if (std::abs(g - gamma) <= kSumTolerance) return true;
  }
  return false;
}

double region_distance(const CredibleRegion& a, const CredibleRegion& b, const BeliefTables& tables) {
  const auto in_range = [&](const std::vector<std::size_t>& m) {
    return m.empty() || m.back() < tables.size();
  };
  if (!in_range(a.members) || !in_range(b.members)) {
    fail(ErrorCode::TablesMismatch, "region members fall outside the tables' psi support");
  }
  std::vector<std::size_t> diff;
  std::set_symmetric_difference(a.members.begin(), a.members.end(), b.members.begin(),
                                b.members.end(), std::back_inserter(diff));
  NeumaierSum mass;
  for (std::size_t j : diff) mass += tables.marg_post[j];
  return mass.value();
}

EtaSweepReport eta_sweep(const BeliefTables& tables, double gamma, std::span<const double> etas) {
  check_gamma(gamma);
  const std::vector<double> gammas = attainable_gammas(tables);
  auto it = std::find_if(gammas.begin(), gammas.end(),
                         [&](double g) { return std::abs(g - gamma) <= kSumTolerance; });
  if (it == gammas.end()) {
    fail(ErrorCode::NotAttainable,
         "gamma " + to_text(gamma) + " is not an exactly attainable content");
  }
  if (etas.empty()) fail(ErrorCode::InvalidArgument, "eta schedule is empty");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) fail(ErrorCode::InvalidArgument, "eta values must be positive");
    if (i > 0 && !(etas[i] < etas[i - 1])) {
      fail(ErrorCode::InvalidArgument, "eta schedule must be strictly decreasing");
    }
  }

  EtaSweepReport rep;
  rep.gamma = gamma;
  rep.gamma_next = std::next(it) == gammas.end() ? *it : *std::next(it);
  rep.reference = rs_region(tables, gamma);
  rep.reference_next = rs_region(tables, rep.gamma_next);
  for (double eta : etas) {
    rep.entries.push_back({eta, grow_region(capped_ratio(tables, eta), true, tables, gamma)});
  }

  const std::size_t tail_start = rep.entries.size() / 2;
  rep.liminf_members = rep.entries[tail_start].region.members;
  rep.limsup_members = rep.entries[tail_start].region.members;
  rep.converged = true;
  for (std::size_t i = tail_start; i < rep.entries.size(); ++i) {
    const auto& m = rep.entries[i].region.members;
    std::vector<std::size_t> meet, join;
    std::set_intersection(rep.liminf_members.begin(), rep.liminf_members.end(), m.begin(),
                          m.end(), std::back_inserter(meet));
    std::set_union(rep.limsup_members.begin(), rep.limsup_members.end(), m.begin(), m.end(),
                   std::back_inserter(join));
    rep.liminf_members = std::move(meet);
    rep.limsup_members = std::move(join);
    rep.converged = rep.converged && m == rep.reference.members;
  }
  rep.lower_inclusion = subset_of(rep.reference.members, rep.liminf_members);
  rep.upper_inclusion = subset_of(rep.limsup_members, rep.reference_next.members);
  return rep;
}

bool minimal_prior_size_check(const BeliefTables& tables, double gamma) {
  const std::size_t k = tables.size();
  if (k > 20) {
    fail(ErrorCode::TooLargeForBruteForce,
         "psi support of " + std::to_string(k) + " points exceeds the brute-force limit of 20");
  }
  const CredibleRegion c = rs_region(tables, gamma);
  if (std::abs(c.attained_mass - gamma) > kSumTolerance) {
    fail(ErrorCode::NotAttainable, "C_gamma content " + to_text(c.attained_mass) +
                                       " differs from gamma " + to_text(gamma));
  }
  NeumaierSum cp;
  for (std::size_t j : c.members) cp += tables.marg_prior[j];
  const double c_prior = cp.value();
  const double c_ratio = c.attained_mass / c_prior;

  const std::uint64_t subsets = std::uint64_t{1} << k;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    NeumaierSum post, prior;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (std::uint64_t{1} << j)) {
        post += tables.marg_post[j];
        prior += tables.marg_prior[j];
      }
    }
    if (post.value() >= gamma - kSumTolerance && prior.value() < c_prior - kSumTolerance) {
      return false;
    }
    if (std::abs(prior.value() - c_prior) <= kSumTolerance &&
        post.value() / prior.value() > c_ratio + kSumTolerance) {
      return false;
    }
  }
  return true;
}

}  // namespace relbelief

#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "flipin/flipit.hpp"
#include "flipin/influence_network.hpp"

namespace flipin {

/// A node (or network) admits a mutually rational contract iff its
/// insurability ratio is at least this value.
inline constexpr double kInsurabilityThreshold = 0.5 + std::numbers::sqrt2 / 4.0;

/// Coverage level s in (0, 1] and premium T >= 0.
struct Contract {
  double s = 0.5;
  double T = 0.0;
};

/// Aggregated losses over all nodes of a solved network.
struct LossTotals {
  double defender = 0.0;       // including premiums
  double defender_bare = 0.0;  // excluding premiums
  double attacker = 0.0;
  double insurer = 0.0;
  double premium = 0.0;
};

struct InsuranceOutcome {
  bool insurable = false;
  std::optional<Contract> contract;
  double delta = 0.0;
  double insurer_profit = 0.0;
  EquilibriumResult equilibrium;   // under the contract, or at s = 0 if uninsurable
  double defender_total_loss = 0.0;  // own and cross-node losses, moves, premium
  double defender_loss_bare = 0.0;   // same without the premium
  double attacker_utility = 0.0;
};

/// delta = gamma_a c_d / (gamma_d w*_nn c_a).
double insurability_ratio(const NodeParams& node, double w_star_nn);

struct CoverageInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Coverage levels s at which a low-risk node (0 < delta < 1) is mutually
/// rational to insure. Empty below the insurability threshold.
std::optional<CoverageInterval> feasible_coverage_interval(double delta);

/// Optimal Defender-D contract for node n. `peer_alphas` holds the other
/// nodes' equilibrium controlling fractions in index order with node n
/// skipped (length N - 1).
InsuranceOutcome design_contract_d(const NodeParams& node, const InfluenceKernel& kernel,
                                   std::size_t n, std::span<const double> peer_alphas);

struct NetworkSolutionD {
  InfluenceKernel kernel;
  std::vector<InsuranceOutcome> nodes;
  LossTotals totals;
};

/// Solve every node's insured game. Coverage choices do not move other
/// nodes' frequencies, so one pass fixes all alphas and a second pass
/// prices the premiums.
NetworkSolutionD solve_network_d(const NetworkSpec& spec, std::span<const NodeParams> params);

}  // namespace flipin

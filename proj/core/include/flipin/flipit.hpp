#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "flipin/influence_network.hpp"

namespace flipin {

/// Per-node economic parameters: defender loss scale and move cost,
/// attacker utility scale and move cost. All strictly positive.
struct NodeParams {
  double gamma_d = 1.0;
  double c_d = 1.0;
  double gamma_a = 1.0;
  double c_a = 1.0;

  friend bool operator==(const NodeParams&, const NodeParams&) = default;
};

/// Throws std::invalid_argument unless every field is finite and > 0.
void validate(const NodeParams& params);

/// Defender-D: one defender per node. Defender-C: one defender for the network.
enum class Mode { Distributed, Centralized };

enum class Regime { E1, E2 };

std::string_view to_string(Mode mode);
std::string_view to_string(Regime regime);

/// Parameters of the local game shared by both defender modes:
/// the defender minimizes (1 - s_tilde) * gamma_tilde * alpha + c_d * p_d,
/// the attacker maximizes gamma_a * alpha - c_a * p_a.
struct UnifiedGameParams {
  double s_tilde = 0.0;
  double gamma_tilde = 1.0;
  double c_d = 1.0;
  double gamma_a = 1.0;
  double c_a = 1.0;
};

void validate(const UnifiedGameParams& u);

/// Single-node game with kernel entry w*_nn (gamma_tilde = gamma_d * w*_nn).
UnifiedGameParams local_game(const NodeParams& node, double w_star_nn, double coverage);

struct EquilibriumResult {
  double p_d = 0.0;
  double p_a = 0.0;
  double alpha = 0.0;
  Regime regime = Regime::E1;
  double defender_cost = 0.0;     // K*_d at the equilibrium
  double attacker_utility = 0.0;
};

/// Long-run fraction of time the attacker controls the node when both
/// players move periodically at the given rates with uniform random phase.
double attacker_controlling_fraction(double p_d, double p_a);

UnifiedGameParams unified_params(Mode mode, std::size_t node_index,
                                 std::span<const NodeParams> params,
                                 const InfluenceKernel& kernel, double coverage);

/// Coverage at which the local game switches from E2 to E1, i.e.
/// 1 - gamma_a c_d / (gamma_tilde c_a). Nonpositive means E1 everywhere.
double regime_breakpoint(const UnifiedGameParams& u);

/// Closed-form Nash equilibrium of the local game. The trivial 0/0
/// intersection is never returned; at s_tilde = 1 the result is the
/// full-coverage limit (zero frequencies, alpha = 1).
EquilibriumResult local_equilibrium(const UnifiedGameParams& u);

/// (1 - s) gamma_tilde alpha(p_d, p_a) + c_d p_d
double defender_cost(double p_d, double p_a, const UnifiedGameParams& u);
/// gamma_a alpha(p_d, p_a) - c_a p_a
double attacker_utility(double p_a, double p_d, const UnifiedGameParams& u);

}  // namespace flipin

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "flipin/contracts_distributed.hpp"
#include "flipin/flipit.hpp"
#include "flipin/influence_network.hpp"

namespace flipin {

/// Insurer objectives at or below this value are treated as uninsurable.
inline constexpr double kCentralizedProfitFloor = 1e-12;

enum class CentralizedSolver { ClosedForm, Numeric };

std::string_view to_string(CentralizedSolver solver);

/// Outcome of the single network-wide contract offered to one defender.
struct CentralizedOutcome {
  bool insurable = false;
  std::optional<Contract> contract;
  std::vector<EquilibriumResult> per_node_equilibria;
  std::vector<double> gamma_tilde;   // per-node effective loss weights
  double insurer_profit = 0.0;
  double defender_total_loss = 0.0;  // including premium
  double defender_loss_bare = 0.0;
  double attacker_utility = 0.0;     // summed over nodes
  CentralizedSolver solver = CentralizedSolver::Numeric;
  /// (s, objective) samples, filled only when requested.
  std::vector<std::pair<double, double>> objective_trace;
};

/// sum_n [K_n(0) - K_n(s) - s gamma_tilde_n alpha_n(s)] with Defender-C
/// effective weights gamma_tilde_n = sum_m gamma_d,m w*_mn.
double insurer_objective_c(double s, std::span<const NodeParams> params,
                           const InfluenceKernel& kernel);

/// Closed form for identical node parameters on a network whose weight
/// rows all sum to one; independent of topology.
CentralizedOutcome design_contract_semi_homogeneous(const NodeParams& shared, std::size_t node_count,
                                                    double eta);

struct NumericOptions {
  double tolerance = 1e-9;          // golden-section bracket width on s
  std::size_t trace_points = 0;     // objective samples to record
};

/// Maximize the insurer objective over s in (0, 1]. The objective is concave
/// between consecutive regime breakpoints, so each cell is searched by golden
/// section and the best cell wins (ties toward smaller s).
CentralizedOutcome design_contract_c_numeric(std::span<const NodeParams> params,
                                             const InfluenceKernel& kernel,
                                             const NumericOptions& options = {});

struct SolveCOptions {
  bool force_numeric = false;
  NumericOptions numeric;
};

/// Closed form when every node shares parameters and every weight row sums
/// to one; numeric otherwise.
CentralizedOutcome solve_network_c(const NetworkSpec& spec, std::span<const NodeParams> params,
                                   const SolveCOptions& options = {});

/// Maximizer of a function that is unimodal on [lo, hi].
double golden_section_maximize(const auto& f, double lo, double hi, double tolerance) {
  constexpr double inv_phi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace flipin

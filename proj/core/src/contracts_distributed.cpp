#include "flipin/contracts_distributed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flipin {

double insurability_ratio(const NodeParams& node, double w_star_nn) {
  validate(node);
  if (!(w_star_nn >= 1.0) || !std::isfinite(w_star_nn)) {
    throw std::invalid_argument("insurability_ratio: w*_nn must be >= 1");
  }
  return node.gamma_a * node.c_d / (node.gamma_d * w_star_nn * node.c_a);
}

std::optional<CoverageInterval> feasible_coverage_interval(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("feasible_coverage_interval: delta must lie in (0, 1)");
  }
  if (delta < kInsurabilityThreshold) return std::nullopt;
  const double r = std::sqrt(std::max(0.0, 2.0 * (delta - 0.5) * (delta - 0.5) - 0.25));
  return CoverageInterval{std::max(1.0 - delta, 0.5 - r), std::min(1.0, 0.5 + r)};
}

InsuranceOutcome design_contract_d(const NodeParams& node, const InfluenceKernel& kernel,
                                   std::size_t n, std::span<const double> peer_alphas) {
  const std::size_t size = kernel.size();
  if (n >= size) throw std::out_of_range("design_contract_d: node index out of range");
  if (peer_alphas.size() + 1 != size) {
    throw std::invalid_argument("design_contract_d: expected " + std::to_string(size - 1) +
                                " peer alphas, got " + std::to_string(peer_alphas.size()));
  }

  const double w_nn = kernel(n, n);
  InsuranceOutcome out;
  out.delta = insurability_ratio(node, w_nn);

  double cross = 0.0;  // sum_{m != n} w*_nm alpha_m
  for (std::size_t m = 0, k = 0; m < size; ++m) {
    if (m == n) continue;
    cross += kernel(n, m) * peer_alphas[k++];
  }

  const double gamma_tilde = node.gamma_d * w_nn;
  const double curvature = gamma_tilde * gamma_tilde * node.c_a / (node.gamma_a * node.c_d);
  const double s = out.delta >= kInsurabilityThreshold ? 0.5 : 0.0;

  out.equilibrium = local_equilibrium(local_game(node, w_nn, s));
  out.attacker_utility = out.equilibrium.attacker_utility;

  double premium = 0.0;
  if (s > 0.0) {
    out.insurable = true;
    if (out.delta >= 1.0) {
      premium = (gamma_tilde + node.gamma_d * cross) / 2.0;
      out.insurer_profit = curvature / 8.0;
    } else {
      const double no_insurance_cost = node.gamma_a * node.c_d / node.c_a;
      premium = no_insurance_cost - gamma_tilde / 2.0 + node.gamma_d * cross / 2.0;
      out.insurer_profit = no_insurance_cost - gamma_tilde + curvature / 8.0;
    }
    out.contract = Contract{s, premium};
  }

  out.defender_loss_bare =
      (1.0 - s) * node.gamma_d * (w_nn * out.equilibrium.alpha + cross) + node.c_d * out.equilibrium.p_d;
  out.defender_total_loss = out.defender_loss_bare + premium;
  return out;
}

NetworkSolutionD solve_network_d(const NetworkSpec& spec, std::span<const NodeParams> params) {
  if (params.size() != spec.node_count) {
    throw std::invalid_argument("solve_network_d: " + std::to_string(params.size()) +
                                " parameter sets for " + std::to_string(spec.node_count) + " nodes");
  }
  NetworkSolutionD sol;
  sol.kernel = compute_kernel(spec);
  const std::size_t size = spec.node_count;

  // Pass 1: insurability and coverage decide each node's alpha on their own.
  std::vector<double> alphas(size);
  for (std::size_t n = 0; n < size; ++n) {
    const double w_nn = sol.kernel(n, n);
    const double s = insurability_ratio(params[n], w_nn) >= kInsurabilityThreshold ? 0.5 : 0.0;
    alphas[n] = local_equilibrium(local_game(params[n], w_nn, s)).alpha;
  }

  // Pass 2: premiums and losses given every alpha.
  sol.nodes.reserve(size);
  std::vector<double> peers(size - 1);
  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t m = 0, k = 0; m < size; ++m)
      if (m != n) peers[k++] = alphas[m];
    InsuranceOutcome o = design_contract_d(params[n], sol.kernel, n, peers);
    sol.totals.defender += o.defender_total_loss;
    sol.totals.defender_bare += o.defender_loss_bare;
    sol.totals.attacker += o.attacker_utility;
    sol.totals.insurer += o.insurer_profit;
    sol.totals.premium += o.contract ? o.contract->T : 0.0;
    sol.nodes.push_back(std::move(o));
  }
  return sol;
}

}  // namespace flipin

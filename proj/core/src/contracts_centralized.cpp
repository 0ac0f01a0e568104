#include "flipin/contracts_centralized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace flipin {

std::string_view to_string(CentralizedSolver solver) {
  return solver == CentralizedSolver::ClosedForm ? "closed_form" : "numeric";
}

namespace {

// Per-node Defender-C games with the uninsured costs K_n(0) cached.
class CentralizedGames {
 public:
  CentralizedGames(std::span<const NodeParams> params, const InfluenceKernel& kernel) {
    if (params.empty()) throw std::invalid_argument("centralized contract: no nodes");
    if (params.size() != kernel.size()) {
      throw std::invalid_argument("centralized contract: " + std::to_string(params.size()) +
                                  " parameter sets for a kernel of size " +
                                  std::to_string(kernel.size()));
    }
    games_.reserve(params.size());
    base_cost_.reserve(params.size());
    for (std::size_t n = 0; n < params.size(); ++n) {
      UnifiedGameParams u = unified_params(Mode::Centralized, n, params, kernel, 0.0);
      base_cost_.push_back(local_equilibrium(u).defender_cost);
      games_.push_back(u);
    }
  }

  std::size_t size() const { return games_.size(); }
  const UnifiedGameParams& game(std::size_t n) const { return games_[n]; }
  double base_cost(std::size_t n) const { return base_cost_[n]; }

  UnifiedGameParams at(std::size_t n, double s) const {
    UnifiedGameParams u = games_[n];
    u.s_tilde = s;
    return u;
  }

  double objective(double s) const {
    double total = 0.0;
    for (std::size_t n = 0; n < games_.size(); ++n) {
      const EquilibriumResult eq = local_equilibrium(at(n, s));
      total += base_cost_[n] - eq.defender_cost - s * games_[n].gamma_tilde * eq.alpha;
    }
    return total;
  }

  double premium(double s) const {
    double t = 0.0;
    for (std::size_t n = 0; n < games_.size(); ++n)
      t += base_cost_[n] - local_equilibrium(at(n, s)).defender_cost;
    return t;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> b;
    for (const auto& u : games_) {
      const double x = regime_breakpoint(u);
      if (x > 0.0 && x < 1.0) b.push_back(x);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }

 private:
  std::vector<UnifiedGameParams> games_;
  std::vector<double> base_cost_;
};

void fill_equilibria(CentralizedOutcome& out, const CentralizedGames& games, double s) {
  out.per_node_equilibria.clear();
  out.gamma_tilde.clear();
  out.defender_loss_bare = 0.0;
  out.attacker_utility = 0.0;
  for (std::size_t n = 0; n < games.size(); ++n) {
    const EquilibriumResult eq = local_equilibrium(games.at(n, s));
    out.per_node_equilibria.push_back(eq);
    out.gamma_tilde.push_back(games.game(n).gamma_tilde);
    out.defender_loss_bare += eq.defender_cost;
    out.attacker_utility += eq.attacker_utility;
  }
  out.defender_total_loss = out.defender_loss_bare + (out.contract ? out.contract->T : 0.0);
}

}  // namespace

double insurer_objective_c(double s, std::span<const NodeParams> params,
                           const InfluenceKernel& kernel) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("insurer_objective_c: s outside [0, 1]");
  return CentralizedGames(params, kernel).objective(s);
}

CentralizedOutcome design_contract_semi_homogeneous(const NodeParams& shared, std::size_t node_count,
                                                    double eta) {
  validate(shared);
  if (node_count == 0) throw std::invalid_argument("semi-homogeneous contract: no nodes");
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("semi-homogeneous contract: eta outside [0, 1)");

  const double n = static_cast<double>(node_count);
  const double gamma_tilde = shared.gamma_d / (1.0 - eta);
  const double kappa = (1.0 - eta) * shared.gamma_a * shared.c_d / (shared.gamma_d * shared.c_a);
  const double curvature = gamma_tilde * gamma_tilde * shared.c_a / (shared.gamma_a * shared.c_d);

  CentralizedOutcome out;
  out.solver = CentralizedSolver::ClosedForm;
  double s = 0.0;
  if (kappa >= kInsurabilityThreshold) {
    s = 0.5;
    out.insurable = true;
    if (kappa >= 1.0) {
      out.contract = Contract{s, n * shared.gamma_d / (2.0 * (1.0 - eta))};
      out.insurer_profit = n * curvature / 8.0;
    } else {
      const double no_insurance_cost = shared.c_d * shared.gamma_a / shared.c_a;
      out.contract = Contract{s, n * no_insurance_cost - n * shared.gamma_d / (2.0 * (1.0 - eta))};
      out.insurer_profit = n * (no_insurance_cost - gamma_tilde + curvature / 8.0);
    }
  }

  const EquilibriumResult eq =
      local_equilibrium({s, gamma_tilde, shared.c_d, shared.gamma_a, shared.c_a});
  out.per_node_equilibria.assign(node_count, eq);
  out.gamma_tilde.assign(node_count, gamma_tilde);
  out.defender_loss_bare = n * eq.defender_cost;
  out.attacker_utility = n * eq.attacker_utility;
  out.defender_total_loss = out.defender_loss_bare + (out.contract ? out.contract->T : 0.0);
  return out;
}

CentralizedOutcome design_contract_c_numeric(std::span<const NodeParams> params,
                                             const InfluenceKernel& kernel,
                                             const NumericOptions& options) {
  const CentralizedGames games(params, kernel);
  auto objective = [&](double s) { return games.objective(s); };

  std::vector<double> edges{0.0};
  for (double b : games.breakpoints()) edges.push_back(b);
  edges.push_back(1.0);

  double best_s = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](double s) {
    const double v = objective(s);
    if (v > best_value) {
      best_value = v;
      best_s = s;
    }
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    consider(golden_section_maximize(objective, edges[i], edges[i + 1], options.tolerance));
    consider(edges[i + 1]);
  }

  CentralizedOutcome out;
  out.solver = CentralizedSolver::Numeric;
  double s = 0.0;
  if (best_value >= kCentralizedProfitFloor) {
    s = best_s;
    out.insurable = true;
    out.insurer_profit = best_value;
    out.contract = Contract{s, games.premium(s)};
  }
  fill_equilibria(out, games, s);

  if (options.trace_points > 0) {
    out.objective_trace.reserve(options.trace_points);
    for (std::size_t i = 1; i <= options.trace_points; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(options.trace_points);
      out.objective_trace.emplace_back(x, objective(x));
    }
  }
  return out;
}

CentralizedOutcome solve_network_c(const NetworkSpec& spec, std::span<const NodeParams> params,
                                   const SolveCOptions& options) {
  if (params.size() != spec.node_count) {
    throw std::invalid_argument("solve_network_c: " + std::to_string(params.size()) +
                                " parameter sets for " + std::to_string(spec.node_count) + " nodes");
  }
  const InfluenceKernel kernel = compute_kernel(spec);
  for (const auto& p : params) validate(p);

  const bool homogeneous =
      std::all_of(params.begin(), params.end(), [&](const NodeParams& p) { return p == params[0]; });
  if (homogeneous && !options.force_numeric) {
    // Without edges the kernel is the identity, which is the eta = 0 case.
    const bool has_edges =
        std::any_of(spec.weights.begin(), spec.weights.end(), [](double w) { return w != 0.0; });
    return design_contract_semi_homogeneous(params[0], spec.node_count, has_edges ? spec.eta : 0.0);
  }
  return design_contract_c_numeric(params, kernel, options.numeric);
}

}  // namespace flipin

#include "flipin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace flipin {

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::Distributed: return "d";
    case SweepMode::Centralized: return "c";
    case SweepMode::Both: return "both";
  }
  return "both";
}

std::optional<SweepMode> parse_sweep_mode(std::string_view text) {
  if (text == "d" || text == "D") return SweepMode::Distributed;
  if (text == "c" || text == "C") return SweepMode::Centralized;
  if (text == "both") return SweepMode::Both;
  return std::nullopt;
}

double EtaSweep::at(std::size_t i) const {
  if (i + 1 == steps) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void validate(const ExperimentConfig& config) {
  const auto issues = validate_network(config.network);
  if (!issues.empty()) throw ConfigError("network: " + issues.front().message);
  if (config.params.size() != config.network.node_count) {
    throw ConfigError("params: " + std::to_string(config.params.size()) + " node entries for " +
                      std::to_string(config.network.node_count) + " network nodes");
  }
  for (std::size_t n = 0; n < config.params.size(); ++n) {
    try {
      validate(config.params[n]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("params: node " + config.network.label(n) + ": " + e.what());
    }
  }
  if (config.sweep) {
    const EtaSweep& s = *config.sweep;
    auto inside = [](double x) { return x >= 0.0 && x < 1.0; };
    if (!inside(s.from) || !inside(s.to)) throw ConfigError("sweep: bounds must lie within [0, 1)");
    if (s.steps < 2) throw ConfigError("sweep: steps must be >= 2");
  }
}

namespace {

NetworkSpec ring(std::size_t n, double w) {
  NetworkSpec spec = NetworkSpec::unconnected(n);
  for (std::size_t m = 0; m < n; ++m) {
    spec.weight(m, (m + 1) % n) = w;
    spec.weight(m, (m + n - 1) % n) = w;
  }
  return spec;
}

NetworkSpec complete(std::size_t n) {
  NetworkSpec spec = NetworkSpec::unconnected(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k)
      if (m != k) spec.weight(m, k) = 1.0 / static_cast<double>(n - 1);
  return spec;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  const NodeParams fig8{1.0, 1.0, 1.0, 0.8};

  out.push_back({"fig8a", "ring of 6 nodes, 2 neighbors each, w = 0.5", ring(6, 0.5),
                 std::vector<NodeParams>(6, fig8), {}});
  out.push_back({"fig8b", "complete graph of 6 nodes, w = 0.2", complete(6),
                 std::vector<NodeParams>(6, fig8), {}});

  const double third = 1.0 / 3.0;
  NetworkSpec star = NetworkSpec::from_rows({{0.0, third, third, third},
                                             {0.5, 0.0, 0.5, 0.0},
                                             {0.5, 0.5, 0.0, 0.0},
                                             {1.0, 0.0, 0.0, 0.0}},
                                            0.0);
  out.push_back({"fig9", "4 nodes with degrees 3/2/2/1, c_d = 1.2", std::move(star),
                 std::vector<NodeParams>(4, NodeParams{1.0, 1.2, 1.0, 0.8}), {}});

  std::vector<NodeParams> fig10;
  for (double c_d : {0.5, 1.0, 2.0, 4.0}) fig10.push_back({1.0, c_d, 1.0, 1.0});
  out.push_back({"fig10", "4-node ring, w = 0.5, c_d = {0.5, 1, 2, 4}", ring(4, 0.5), std::move(fig10), {}});
  return out;
}

NodeRecord base_record(const std::string& id, const EquilibriumResult& eq) {
  NodeRecord r;
  r.node_id = id;
  r.p_d = eq.p_d;
  r.p_a = eq.p_a;
  r.alpha = eq.alpha;
  r.L_a = eq.attacker_utility;
  return r;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const Preset& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

ExperimentConfig preset_config(const Preset& preset, SweepMode mode) {
  ExperimentConfig cfg;
  cfg.network = preset.network;
  cfg.params = preset.params;
  cfg.mode = mode;
  cfg.sweep = preset.sweep;
  return cfg;
}

SweepRecord solve_point(const NetworkSpec& network, const std::vector<NodeParams>& params, Mode mode) {
  SweepRecord rec;
  rec.eta = network.eta;
  rec.mode = mode;
  const std::size_t size = network.node_count;

  if (mode == Mode::Distributed) {
    const NetworkSolutionD sol = solve_network_d(network, params);
    rec.solver = "closed_form";
    for (std::size_t n = 0; n < size; ++n) {
      const InsuranceOutcome& o = sol.nodes[n];
      NodeRecord r = base_record(network.label(n), o.equilibrium);
      r.insurable = o.insurable;
      if (o.contract) {
        r.s = o.contract->s;
        r.T = o.contract->T;
      }
      r.L_d = o.defender_total_loss;
      r.L_d_bare = o.defender_loss_bare;
      r.L_a = o.attacker_utility;
      r.L_i = o.insurer_profit;
      rec.nodes.push_back(std::move(r));
    }
    rec.L_d_total = sol.totals.defender;
    rec.L_a_total = sol.totals.attacker;
    rec.L_i_total = sol.totals.insurer;
    rec.T_total = sol.totals.premium;
    return rec;
  }

  const CentralizedOutcome out = solve_network_c(network, params);
  rec.solver = std::string(to_string(out.solver));
  const double s = out.contract ? out.contract->s : 0.0;
  const double share = out.contract ? out.contract->T / static_cast<double>(size) : 0.0;
  for (std::size_t n = 0; n < size; ++n) {
    const EquilibriumResult& eq = out.per_node_equilibria[n];
    NodeRecord r = base_record(network.label(n), eq);
    r.insurable = out.insurable;
    if (out.contract) r.s = s;
    r.T = share;
    r.L_d_bare = eq.defender_cost;
    r.L_d = r.L_d_bare + share;
    r.L_i = out.contract ? share - s * out.gamma_tilde[n] * eq.alpha : 0.0;
    rec.nodes.push_back(std::move(r));
  }
  rec.L_d_total = out.defender_total_loss;
  rec.L_a_total = out.attacker_utility;
  rec.L_i_total = out.insurer_profit;
  rec.T_total = out.contract ? out.contract->T : 0.0;
  return rec;
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& config) {
  validate(config);
  std::vector<double> etas;
  if (config.sweep) {
    for (std::size_t i = 0; i < config.sweep->steps; ++i) etas.push_back(config.sweep->at(i));
  } else {
    etas.push_back(config.network.eta);
  }

  std::vector<Mode> modes;
  if (config.mode != SweepMode::Centralized) modes.push_back(Mode::Distributed);
  if (config.mode != SweepMode::Distributed) modes.push_back(Mode::Centralized);

  const std::size_t total = etas.size() * modes.size();
  std::vector<SweepRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      try {
        NetworkSpec net = config.network;
        net.eta = etas[k / modes.size()];
        records[k] = solve_point(net, config.params, modes[k % modes.size()]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace flipin

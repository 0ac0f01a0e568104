#include "flipin/tools/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flipin/contracts_centralized.hpp"
#include "flipin/contracts_distributed.hpp"
#include "flipin/experiments.hpp"
#include "flipin/flipit.hpp"
#include "flipin/montecarlo.hpp"
#include "flipin/tools/io.hpp"

namespace flipin::tools {

namespace {

struct NodeFlags {
  NodeParams node;
  double w_star = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--gamma-d", node.gamma_d, "Defender loss scale")->required();
    cmd->add_option("--c-d", node.c_d, "Defender move cost")->required();
    cmd->add_option("--gamma-a", node.gamma_a, "Attacker utility scale")->required();
    cmd->add_option("--c-a", node.c_a, "Attacker move cost")->required();
    cmd->add_option("--w-star", w_star, "Kernel diagonal entry w*_nn")->capture_default_str();
  }
};

struct NetworkFlags {
  std::string network_file;
  std::string preset;
  std::string params_file;
  CLI::Option* network_opt = nullptr;
  CLI::Option* preset_opt = nullptr;

  void attach(CLI::App* cmd) {
    network_opt = cmd->add_option("--network", network_file, "Network JSON file");
    preset_opt = cmd->add_option("--preset", preset, "Compiled-in preset: fig8a, fig8b, fig9, fig10");
    network_opt->excludes(preset_opt);
    cmd->add_option("--params", params_file, "Per-node parameter JSON file");
  }

  bool given() const { return !network_file.empty() || !preset.empty(); }
};

struct OutputFlags {
  std::string format = "csv";
  std::string out_file;
  bool no_timestamp = false;

  void attach(CLI::App* cmd, bool records) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--out", out_file, "Write output to FILE instead of stdout");
    if (records) cmd->add_flag("--no-header-timestamp", no_timestamp, "Omit the generation timestamp");
  }
};

// Writes to --out when given, otherwise to the default stream.
void emit(const OutputFlags& flags, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (flags.out_file.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(flags.out_file, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open " + flags.out_file + " for writing");
  body(file);
  if (!file) throw std::runtime_error("failed writing " + flags.out_file);
}

void emit_records(const OutputFlags& flags, std::ostream& out, const std::vector<SweepRecord>& records) {
  WriteOptions opts;
  if (!flags.no_timestamp) opts.timestamp = utc_timestamp();
  emit(flags, out, [&](std::ostream& os) {
    if (flags.format == "json") {
      write_json(os, records, opts);
    } else {
      write_csv(os, records, opts);
    }
  });
}

// One flat key/value row, as CSV (header + values) or a JSON object.
using Row = std::vector<std::pair<std::string, nlohmann::json>>;

void emit_row(const OutputFlags& flags, std::ostream& out, const Row& row) {
  emit(flags, out, [&](std::ostream& os) {
    if (flags.format == "json") {
      nlohmann::json obj = nlohmann::json::object();
      for (const auto& [k, v] : row) obj[k] = v;
      os << obj.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].first;
    os << '\n';
    for (std::size_t i = 0; i < row.size(); ++i) {
      const nlohmann::json& v = row[i].second;
      os << (i ? "," : "");
      if (v.is_number()) {
        os << format_number(v.get<double>());
      } else if (v.is_string()) {
        os << v.get<std::string>();
      } else if (!v.is_null()) {
        os << v.dump();
      }
    }
    os << '\n';
  });
}

ExperimentConfig resolve_network(const NetworkFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.preset.empty()) {
    const Preset* p = find_preset(flags.preset);
    if (!p) throw ConfigError("preset: unknown name \"" + flags.preset + "\"");
    cfg = preset_config(*p);
  } else if (!flags.network_file.empty()) {
    cfg.network = load_network(flags.network_file);
    if (flags.params_file.empty()) throw ConfigError("params: --params is required with --network");
  } else {
    throw ConfigError("network: one of --network or --preset is required");
  }
  if (!flags.params_file.empty()) cfg.params = load_params(flags.params_file, cfg.network);
  return cfg;
}

double num(double x) { return round12(x); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Networked FlipIt equilibria and cyber-insurance contracts", "flipin"};
  app.require_subcommand(1);

  // solve-local
  auto* solve_local = app.add_subcommand("solve-local", "Equilibrium of one node's local game");
  NodeFlags local_node;
  double local_s = 0.0;
  OutputFlags local_out;
  local_node.attach(solve_local);
  solve_local->add_option("--s", local_s, "Coverage level s in [0, 1]")->capture_default_str();
  local_out.attach(solve_local, false);

  // contract-d
  auto* contract_d = app.add_subcommand("contract-d", "Optimal per-node (distributed) contracts");
  NodeFlags cd_node;
  NetworkFlags cd_net;
  OutputFlags cd_out;
  contract_d->add_option("--gamma-d", cd_node.node.gamma_d, "Defender loss scale");
  contract_d->add_option("--c-d", cd_node.node.c_d, "Defender move cost");
  contract_d->add_option("--gamma-a", cd_node.node.gamma_a, "Attacker utility scale");
  contract_d->add_option("--c-a", cd_node.node.c_a, "Attacker move cost");
  contract_d->add_option("--w-star", cd_node.w_star, "Kernel diagonal entry w*_nn")->capture_default_str();
  cd_net.attach(contract_d);
  cd_out.attach(contract_d, true);

  // contract-c
  auto* contract_c = app.add_subcommand("contract-c", "Optimal network-wide (centralized) contract");
  NetworkFlags cc_net;
  OutputFlags cc_out;
  cc_net.attach(contract_c);
  cc_out.attach(contract_c, true);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Solve over a range of eta");
  NetworkFlags sw_net;
  OutputFlags sw_out;
  std::string sw_mode = "both";
  std::vector<double> sw_eta;
  unsigned sw_threads = 0;
  sw_net.attach(sweep);
  sweep->add_option("--mode", sw_mode, "Defender mode")->check(CLI::IsMember({"d", "c", "both"}))->capture_default_str();
  sweep->add_option("--sweep-eta", sw_eta, "FROM TO STEPS")->expected(3);
  sweep->add_option("--threads", sw_threads, "Worker threads (0 = all cores)");
  sw_out.attach(sweep, true);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of the attacker's controlling fraction");
  double sim_pd = 0.0;
  double sim_pa = 0.0;
  mc::SimulationConfig sim_cfg;
  simulate->add_option("--p-d", sim_pd, "Defender move frequency")->required();
  simulate->add_option("--p-a", sim_pa, "Attacker move frequency")->required();
  simulate->add_option("--horizon", sim_cfg.horizon, "Simulated time per run")->capture_default_str();
  simulate->add_option("--runs", sim_cfg.runs, "Independent runs")->capture_default_str();
  simulate->add_option("--seed", sim_cfg.seed, "Root seed")->capture_default_str();
  simulate->add_option("--threads", sim_cfg.threads, "Worker threads (0 = all cores)");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a network file against the weight rules");
  std::string val_file;
  validate_cmd->add_option("--network", val_file, "Network JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (solve_local->parsed()) {
      const UnifiedGameParams u = local_game(local_node.node, local_node.w_star, local_s);
      const EquilibriumResult eq = local_equilibrium(u);
      emit_row(local_out, out,
               {{"regime", std::string(to_string(eq.regime))},
                {"p_d", num(eq.p_d)},
                {"p_a", num(eq.p_a)},
                {"alpha", num(eq.alpha)},
                {"defender_cost", num(eq.defender_cost)},
                {"attacker_utility", num(eq.attacker_utility)}});
      return 0;
    }

    if (contract_d->parsed()) {
      if (cd_net.given()) {
        ExperimentConfig cfg = resolve_network(cd_net);
        validate(cfg);
        emit_records(cd_out, out, {solve_point(cfg.network, cfg.params, Mode::Distributed)});
        return 0;
      }
      for (const char* flag : {"--gamma-d", "--c-d", "--gamma-a", "--c-a"}) {
        if (contract_d->count(flag) == 0) {
          throw ConfigError(std::string("node: ") + flag + " is required without --network or --preset");
        }
      }
      const InfluenceKernel kernel(1, {cd_node.w_star}, 0.0);
      const InsuranceOutcome o = design_contract_d(cd_node.node, kernel, 0, {});
      emit_row(cd_out, out,
               {{"insurable", o.insurable},
                {"delta", num(o.delta)},
                {"s", o.contract ? nlohmann::json(num(o.contract->s)) : nlohmann::json(nullptr)},
                {"T", num(o.contract ? o.contract->T : 0.0)},
                {"profit", num(o.insurer_profit)},
                {"p_d", num(o.equilibrium.p_d)},
                {"p_a", num(o.equilibrium.p_a)},
                {"alpha", num(o.equilibrium.alpha)},
                {"L_d", num(o.defender_total_loss)},
                {"L_d_bare", num(o.defender_loss_bare)},
                {"L_a", num(o.attacker_utility)}});
      return 0;
    }

    if (contract_c->parsed()) {
      ExperimentConfig cfg = resolve_network(cc_net);
      validate(cfg);
      emit_records(cc_out, out, {solve_point(cfg.network, cfg.params, Mode::Centralized)});
      return 0;
    }

    if (sweep->parsed()) {
      ExperimentConfig cfg = resolve_network(sw_net);
      cfg.mode = *parse_sweep_mode(sw_mode);
      cfg.threads = sw_threads;
      if (!sw_eta.empty()) {
        const double steps = sw_eta[2];
        if (!(steps >= 0.0) || std::floor(steps) != steps) throw ConfigError("sweep: steps must be an integer");
        cfg.sweep = EtaSweep{sw_eta[0], sw_eta[1], static_cast<std::size_t>(steps)};
      }
      emit_records(sw_out, out, run_sweep(cfg));
      return 0;
    }

    if (simulate->parsed()) {
      const mc::SimulationResult r = mc::simulate_flipit(sim_pd, sim_pa, sim_cfg);
      if (r.short_horizon) {
        err << "warning: horizon " << format_number(sim_cfg.horizon) << " is below 100 / min(p_d, p_a)\n";
      }
      out << "alpha_hat = " << format_number(r.alpha_hat) << " ± " << format_number(r.std_error)
          << " (runs " << r.runs << ", analytic " << format_number(attacker_controlling_fraction(sim_pd, sim_pa))
          << ")\n";
      return 0;
    }

    if (validate_cmd->parsed()) {
      const NetworkSpec spec = load_network(val_file);
      const auto issues = validate_network(spec);
      if (issues.empty()) {
        out << "valid: " << spec.node_count << " nodes, eta " << format_number(spec.eta) << '\n';
        return 0;
      }
      for (const auto& issue : issues) err << "invalid: " << issue.message << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace flipin::tools

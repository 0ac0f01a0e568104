#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flipin/contracts_centralized.hpp"
#include "flipin/contracts_distributed.hpp"
#include "flipin/flipit.hpp"
#include "flipin/influence_network.hpp"

namespace flipin {

enum class SweepMode { Distributed, Centralized, Both };

std::string_view to_string(SweepMode mode);
std::optional<SweepMode> parse_sweep_mode(std::string_view text);  // "d", "c", "both"

/// Linear sweep of the discount ratio eta.
struct EtaSweep {
  double from = 0.0;
  double to = 0.9;
  std::size_t steps = 91;

  double at(std::size_t i) const;
};

struct ExperimentConfig {
  NetworkSpec network;
  std::vector<NodeParams> params;
  SweepMode mode = SweepMode::Both;
  /// Without a sweep the network's own eta is solved once.
  std::optional<EtaSweep> sweep;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Throws ConfigError naming the first violated rule.
void validate(const ExperimentConfig& config);

/// Compiled-in experiment setups: fig8a, fig8b, fig9, fig10.
struct Preset {
  std::string name;
  std::string description;
  NetworkSpec network;
  std::vector<NodeParams> params;
  EtaSweep sweep;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);
ExperimentConfig preset_config(const Preset& preset, SweepMode mode = SweepMode::Both);

struct NodeRecord {
  std::string node_id;
  bool insurable = false;
  std::optional<double> s;  // absent when uninsurable
  double T = 0.0;
  double p_d = 0.0;
  double p_a = 0.0;
  double alpha = 0.0;
  double L_d = 0.0;       // with premium
  double L_d_bare = 0.0;  // without premium
  double L_a = 0.0;
  double L_i = 0.0;
};

struct SweepRecord {
  double eta = 0.0;
  Mode mode = Mode::Distributed;
  std::string solver;  // closed_form or numeric
  std::vector<NodeRecord> nodes;
  double L_d_total = 0.0;
  double L_a_total = 0.0;
  double L_i_total = 0.0;
  double T_total = 0.0;
};

/// Solve one network in one mode. Centralized per-node rows split the
/// network premium evenly: T / N per node.
SweepRecord solve_point(const NetworkSpec& network, const std::vector<NodeParams>& params, Mode mode);

/// All sweep points, in sweep order; for mode Both the Distributed record
/// precedes the Centralized one at each eta.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& config);

}  // namespace flipin

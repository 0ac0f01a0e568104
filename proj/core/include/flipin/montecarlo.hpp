#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flipin/flipit.hpp"

namespace flipin::mc {

/// Counter-based generator: output i of stream (seed, stream) is a pure
/// function of (seed, stream, i), so runs can be evaluated in any order.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SimulationConfig {
  double horizon = 1e4;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  /// Time excluded from the estimate at the start of each run. Defaults to
  /// one period of the slower player, after which the ownership law no
  /// longer depends on the initial defender ownership.
  std::optional<double> warmup;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

struct SimulationResult {
  double alpha_hat = 0.0;
  double std_error = 0.0;
  std::size_t runs = 0;
  /// horizon < 100 / min(p_d, p_a)
  bool short_horizon = false;
};

/// Attacker-owned fraction of [warmup, horizon] for one periodic timeline.
/// Moves happen at phase + k / p. The defender owns at t = 0; a move by the
/// current owner changes nothing and exactly simultaneous moves cancel.
double simulate_timeline(double p_d, double p_a, double phase_d, double phase_a, double horizon,
                         double warmup);

SimulationResult simulate_flipit(double p_d, double p_a, const SimulationConfig& cfg);

/// Sum with a fixed binary-tree reduction order.
double pairwise_sum(std::span<const double> values);

struct LossSample {
  double x = 0.0;     // direct loss
  double beta = 0.0;  // effective loss (1 - s) x
};

struct LossSampling {
  std::vector<LossSample> samples;
  double mean_x = 0.0;
};

/// Exponential losses with mean gamma_d * R.
LossSampling sample_losses(double gamma_d, double risk, double s, std::size_t count,
                           std::uint64_t seed);

struct DeviationReport {
  double defender_improvement = 0.0;  // best cost reduction found
  double attacker_improvement = 0.0;  // best utility gain found
  double max() const { return defender_improvement > attacker_improvement ? defender_improvement
                                                                          : attacker_improvement; }
};

/// Scan unilateral deviations on a log grid spanning [x / 1e3, x * 1e3]
/// around each player's frequency (plus the zero frequency).
DeviationReport deviation_scan(double p_d, double p_a, const UnifiedGameParams& u,
                               std::size_t grid_size);
DeviationReport deviation_scan(const EquilibriumResult& eq, const UnifiedGameParams& u,
                               std::size_t grid_size);

struct GridContract {
  double s = 0.0;
  double T = 0.0;
  double profit = 0.0;
};

/// Brute-force contract search for one node with no peers: scans the
/// (s, T) grid s in (0, 1], T in [0, K(0)], refining each s's largest
/// defender-acceptable premium by bisection, and keeps the most profitable
/// pair that both parties accept.
std::optional<GridContract> grid_contract_oracle(const NodeParams& node, double w_star_nn,
                                                 std::size_t s_steps, std::size_t t_steps);

}  // namespace flipin::mc

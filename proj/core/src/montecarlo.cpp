#include "flipin/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace flipin::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_positive_rate(double p, const char* name) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(name) + " must be a positive finite frequency");
  }
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + mix64(stream ^ 0xD1B54A32D192ED03ULL))) {}

std::uint64_t StreamRng::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double StreamRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double simulate_timeline(double p_d, double p_a, double phase_d, double phase_a, double horizon,
                         double warmup) {
  require_positive_rate(p_d, "p_d");
  require_positive_rate(p_a, "p_a");
  if (!(warmup >= 0.0 && horizon > warmup)) {
    throw std::invalid_argument("simulate_timeline: need 0 <= warmup < horizon");
  }
  const double tau_d = 1.0 / p_d;
  const double tau_a = 1.0 / p_a;

  bool attacker_owns = false;
  double attacker_time = 0.0;
  double last = 0.0;
  auto accrue = [&](double until) {
    if (attacker_owns) {
      const double lo = std::max(last, warmup);
      if (until > lo) attacker_time += until - lo;
    }
    last = until;
  };

  std::uint64_t k_d = 0;
  std::uint64_t k_a = 0;
  double next_d = phase_d;
  double next_a = phase_a;
  while (true) {
    const double t = std::min(next_d, next_a);
    if (t > horizon) break;
    accrue(t);
    if (next_d == next_a) {
      // Simultaneous moves cancel.
      next_d = phase_d + static_cast<double>(++k_d) * tau_d;
      next_a = phase_a + static_cast<double>(++k_a) * tau_a;
    } else if (next_d < next_a) {
      attacker_owns = false;
      next_d = phase_d + static_cast<double>(++k_d) * tau_d;
    } else {
      attacker_owns = true;
      next_a = phase_a + static_cast<double>(++k_a) * tau_a;
    }
  }
  accrue(horizon);
  return attacker_time / (horizon - warmup);
}

SimulationResult simulate_flipit(double p_d, double p_a, const SimulationConfig& cfg) {
  require_positive_rate(p_d, "p_d");
  require_positive_rate(p_a, "p_a");
  if (cfg.runs == 0) throw std::invalid_argument("simulate_flipit: runs must be >= 1");
  const double tau_d = 1.0 / p_d;
  const double tau_a = 1.0 / p_a;
  const double warmup = cfg.warmup.value_or(std::max(tau_d, tau_a));
  if (!(cfg.horizon > warmup)) {
    throw std::invalid_argument("simulate_flipit: horizon must exceed the warm-up period");
  }

  std::vector<double> fractions(cfg.runs);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      StreamRng rng(cfg.seed, r);
      const double phase_d = rng.uniform() * tau_d;
      const double phase_a = rng.uniform() * tau_a;
      fractions[r] = simulate_timeline(p_d, p_a, phase_d, phase_a, cfg.horizon, warmup);
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.runs));
  if (threads <= 1) {
    work(0, cfg.runs);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cfg.runs + threads - 1) / threads;
    for (std::size_t b = 0; b < cfg.runs; b += chunk) pool.emplace_back(work, b, std::min(cfg.runs, b + chunk));
  }

  SimulationResult res;
  res.runs = cfg.runs;
  res.alpha_hat = pairwise_sum(fractions) / static_cast<double>(cfg.runs);
  if (cfg.runs > 1) {
    std::vector<double> sq(cfg.runs);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      const double d = fractions[r] - res.alpha_hat;
      sq[r] = d * d;
    }
    const double sd = std::sqrt(pairwise_sum(sq) / static_cast<double>(cfg.runs - 1));
    res.std_error = sd / std::sqrt(static_cast<double>(cfg.runs));
  }
  res.short_horizon = cfg.horizon < 100.0 / std::min(p_d, p_a);
  return res;
}

LossSampling sample_losses(double gamma_d, double risk, double s, std::size_t count,
                           std::uint64_t seed) {
  if (!(gamma_d > 0.0)) throw std::invalid_argument("sample_losses: gamma_d must be > 0");
  if (!(risk > 0.0)) throw std::invalid_argument("sample_losses: risk level must be > 0");
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("sample_losses: s outside [0, 1]");

  const double mean = gamma_d * risk;
  LossSampling out;
  out.samples.resize(count);
  std::vector<double> xs(count);
  StreamRng rng(seed, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = -mean * std::log1p(-rng.uniform());
    xs[i] = x;
    out.samples[i] = {x, (1.0 - s) * x};
  }
  out.mean_x = count ? pairwise_sum(xs) / static_cast<double>(count) : 0.0;
  return out;
}

namespace {

template <typename F>
void for_each_log_point(double center, std::size_t grid_size, F&& f) {
  f(0.0);
  const double c = center > 0.0 ? center : 1.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double e = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    f(c * std::pow(10.0, e));
  }
}

}  // namespace

DeviationReport deviation_scan(double p_d, double p_a, const UnifiedGameParams& u,
                               std::size_t grid_size) {
  if (grid_size < 10) throw std::invalid_argument("deviation_scan: grid_size must be >= 10");
  validate(u);

  DeviationReport rep;
  const double cost = defender_cost(p_d, p_a, u);
  double best_cost = cost;
  for_each_log_point(p_d, grid_size, [&](double x) { best_cost = std::min(best_cost, defender_cost(x, p_a, u)); });
  rep.defender_improvement = cost - best_cost;

  const double util = attacker_utility(p_a, p_d, u);
  double best_util = util;
  for_each_log_point(p_a, grid_size, [&](double x) { best_util = std::max(best_util, attacker_utility(x, p_d, u)); });
  rep.attacker_improvement = best_util - util;
  return rep;
}

DeviationReport deviation_scan(const EquilibriumResult& eq, const UnifiedGameParams& u,
                               std::size_t grid_size) {
  return deviation_scan(eq.p_d, eq.p_a, u, grid_size);
}

std::optional<GridContract> grid_contract_oracle(const NodeParams& node, double w_star_nn,
                                                 std::size_t s_steps, std::size_t t_steps) {
  if (s_steps < 100 || t_steps < 100) {
    throw std::invalid_argument("grid_contract_oracle: step counts must be >= 100");
  }
  validate(node);

  // Total defender cost at coverage s, from the objective evaluator.
  auto insured_cost = [&](double s) {
    const UnifiedGameParams u = local_game(node, w_star_nn, s);
    const EquilibriumResult eq = local_equilibrium(u);
    return std::pair{defender_cost(eq.p_d, eq.p_a, u), s * u.gamma_tilde * eq.alpha};
  };
  const double uninsured = insured_cost(0.0).first;
  const double t_upper = uninsured;
  const double t_step = t_upper / static_cast<double>(t_steps);

  std::optional<GridContract> best;
  for (std::size_t i = 1; i <= s_steps; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(s_steps);
    const auto [cost, payout] = insured_cost(s);
    auto defender_accepts = [&](double t) { return cost + t <= uninsured; };

    // Largest grid premium the defender accepts.
    std::size_t j = t_steps + 1;
    while (j > 0 && !defender_accepts(static_cast<double>(j - 1) * t_step)) --j;
    if (j == 0) continue;
    double lo = static_cast<double>(j - 1) * t_step;
    double hi = std::min(t_upper, lo + t_step);
    if (defender_accepts(hi)) {
      lo = hi;
    } else {
      for (int it = 0; it < 80 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (defender_accepts(mid) ? lo : hi) = mid;
      }
    }

    const double profit = lo - payout;
    if (profit < 0.0) continue;  // insurer declines every acceptable premium
    if (!best || profit > best->profit) best = GridContract{s, lo, profit};
  }
  return best;
}

}  // namespace flipin::mc

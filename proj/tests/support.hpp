#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "flipin/flipit.hpp"
#include "flipin/influence_network.hpp"

namespace flipin::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Random valid network: every row has 1..3 out-edges (N >= 2) whose
/// weights sum to one.
inline NetworkSpec random_network(std::mt19937_64& rng, std::size_t n, double eta) {
  NetworkSpec spec = NetworkSpec::unconnected(n, eta);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t degree = 1 + pick(rng) % std::min<std::size_t>(3, n - 1);
    double total = 0.0;
    for (std::size_t e = 0; e < degree; ++e) {
      std::size_t k = pick(rng);
      while (k == m) k = pick(rng);
      const double w = uniform(rng, 0.1, 1.0);
      spec.weight(m, k) += w;
      total += w;
    }
    for (std::size_t k = 0; k < n; ++k) spec.weight(m, k) /= total;
    // Renormalize once more so the row sum is as close to 1 as rounding allows.
    double sum = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (spec.weight(m, k) > 0.0) last = k;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k != last) sum += spec.weight(m, k);
    }
    spec.weight(m, last) = 1.0 - sum;
  }
  return spec;
}

inline NodeParams random_node(std::mt19937_64& rng) {
  return {log_uniform(rng, 0.2, 5.0), log_uniform(rng, 0.2, 5.0), log_uniform(rng, 0.2, 5.0),
          log_uniform(rng, 0.2, 5.0)};
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace flipin::testing

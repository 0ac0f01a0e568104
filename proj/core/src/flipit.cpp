#include "flipin/flipit.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flipin {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require_frequency(double p, const char* name) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(name) + " must be a finite nonnegative frequency");
  }
}

}  // namespace

void validate(const NodeParams& p) {
  if (!positive(p.gamma_d)) throw std::invalid_argument("gamma_d must be > 0");
  if (!positive(p.c_d)) throw std::invalid_argument("c_d must be > 0");
  if (!positive(p.gamma_a)) throw std::invalid_argument("gamma_a must be > 0");
  if (!positive(p.c_a)) throw std::invalid_argument("c_a must be > 0");
}

void validate(const UnifiedGameParams& u) {
  if (!(u.s_tilde >= 0.0 && u.s_tilde <= 1.0)) throw std::invalid_argument("s_tilde outside [0, 1]");
  if (!positive(u.gamma_tilde)) throw std::invalid_argument("gamma_tilde must be > 0");
  if (!positive(u.c_d)) throw std::invalid_argument("c_d must be > 0");
  if (!positive(u.gamma_a)) throw std::invalid_argument("gamma_a must be > 0");
  if (!positive(u.c_a)) throw std::invalid_argument("c_a must be > 0");
}

std::string_view to_string(Mode mode) { return mode == Mode::Distributed ? "D" : "C"; }
std::string_view to_string(Regime regime) { return regime == Regime::E1 ? "E1" : "E2"; }

UnifiedGameParams local_game(const NodeParams& node, double w_star_nn, double coverage) {
  return {coverage, node.gamma_d * w_star_nn, node.c_d, node.gamma_a, node.c_a};
}

double attacker_controlling_fraction(double p_d, double p_a) {
  require_frequency(p_d, "p_d");
  require_frequency(p_a, "p_a");
  if (p_a == 0.0) return 0.0;
  if (p_d >= p_a) return p_a / (2.0 * p_d);
  return 1.0 - p_d / (2.0 * p_a);
}

UnifiedGameParams unified_params(Mode mode, std::size_t n, std::span<const NodeParams> params,
                                 const InfluenceKernel& kernel, double coverage) {
  if (n >= params.size() || n >= kernel.size()) {
    throw std::out_of_range("unified_params: node index " + std::to_string(n) + " out of range");
  }
  if (params.size() != kernel.size()) {
    throw std::invalid_argument("unified_params: parameter count does not match kernel size");
  }
  if (!(coverage >= 0.0 && coverage <= 1.0)) {
    throw std::invalid_argument("unified_params: coverage outside [0, 1]");
  }
  const NodeParams& node = params[n];
  validate(node);

  double gamma_tilde = 0.0;
  if (mode == Mode::Distributed) {
    gamma_tilde = node.gamma_d * kernel(n, n);
  } else {
    for (std::size_t m = 0; m < params.size(); ++m) gamma_tilde += params[m].gamma_d * kernel(m, n);
  }
  return {coverage, gamma_tilde, node.c_d, node.gamma_a, node.c_a};
}

double regime_breakpoint(const UnifiedGameParams& u) {
  return 1.0 - u.gamma_a * u.c_d / (u.gamma_tilde * u.c_a);
}

EquilibriumResult local_equilibrium(const UnifiedGameParams& u) {
  validate(u);
  const double loss = (1.0 - u.s_tilde) * u.gamma_tilde;  // effective loss weight

  EquilibriumResult eq;
  if (loss == 0.0) {
    // Full coverage: both frequencies vanish and alpha tends to 1. Report the
    // limit instead of the excluded 0/0 intersection.
    eq.regime = Regime::E1;
    eq.alpha = 1.0;
    eq.attacker_utility = u.gamma_a;
    return eq;
  }
  // Ties go to E1.
  if (u.gamma_a / (2.0 * u.c_a) >= loss / (2.0 * u.c_d)) {
    eq.regime = Regime::E1;
    eq.p_d = loss * loss * u.c_a / (2.0 * u.gamma_a * u.c_d * u.c_d);
    eq.p_a = loss / (2.0 * u.c_d);
    eq.defender_cost = loss;
    eq.attacker_utility = u.gamma_a - loss * u.c_a / u.c_d;
  } else {
    // E2 requires loss > 0, hence s_tilde < 1.
    assert(u.s_tilde < 1.0);
    eq.regime = Regime::E2;
    eq.p_d = u.gamma_a / (2.0 * u.c_a);
    eq.p_a = u.gamma_a * u.gamma_a * u.c_d / (2.0 * loss * u.c_a * u.c_a);
    eq.defender_cost = u.gamma_a * u.c_d / u.c_a;
    eq.attacker_utility = 0.0;
  }
  eq.alpha = attacker_controlling_fraction(eq.p_d, eq.p_a);
  return eq;
}

double defender_cost(double p_d, double p_a, const UnifiedGameParams& u) {
  return (1.0 - u.s_tilde) * u.gamma_tilde * attacker_controlling_fraction(p_d, p_a) + u.c_d * p_d;
}

double attacker_utility(double p_a, double p_d, const UnifiedGameParams& u) {
  return u.gamma_a * attacker_controlling_fraction(p_d, p_a) - u.c_a * p_a;
}

}  // namespace flipin

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "flipin/influence_network.hpp"
#include "support.hpp"

using namespace flipin;

namespace {

bool has_rule(const std::vector<ValidationIssue>& issues, NetworkRule rule) {
  return std::any_of(issues.begin(), issues.end(), [&](const auto& i) { return i.rule == rule; });
}

NetworkSpec two_cycle(double eta) { return NetworkSpec::from_rows({{0, 1}, {1, 0}}, eta); }

}  // namespace

TEST_SUITE("influence_network") {

TEST_CASE("validate_network accepts the symmetric 2-cycle") {
  CHECK(validate_network(two_cycle(0.5)).empty());
}

TEST_CASE("validate_network reports a nonzero diagonal with the node") {
  const auto issues = validate_network(NetworkSpec::from_rows({{0.5, 0.5}, {1, 0}}, 0.5));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].rule == NetworkRule::Diagonal);
  CHECK(issues[0].node == 0);
  CHECK(issues[0].message.find("w_11 ≠ 0") != std::string::npos);
  CHECK(issues[0].message.find("node 1") != std::string::npos);
}

TEST_CASE("validate_network reports a short row") {
  const auto issues = validate_network(NetworkSpec::from_rows({{0, 0.4}, {1, 0}}, 0.5));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].rule == NetworkRule::RowSum);
  CHECK(issues[0].message == "row 1 sums to 0.4");
}

TEST_CASE("validate_network eta domain") {
  CHECK(has_rule(validate_network(two_cycle(1.0)), NetworkRule::Eta));
  CHECK(has_rule(validate_network(two_cycle(-0.1)), NetworkRule::Eta));
  CHECK(has_rule(validate_network(two_cycle(std::nan(""))), NetworkRule::Eta));
  CHECK(validate_network(two_cycle(0.999)).empty());
}

TEST_CASE("validate_network weight range and shape") {
  CHECK(has_rule(validate_network(NetworkSpec::from_rows({{0, 1.5}, {1, 0}}, 0.1)), NetworkRule::WeightRange));
  CHECK(has_rule(validate_network(NetworkSpec::from_rows({{0, -0.2}, {1, 0}}, 0.1)), NetworkRule::WeightRange));
  NetworkSpec bad = two_cycle(0.1);
  bad.weights.pop_back();
  CHECK(has_rule(validate_network(bad), NetworkRule::Shape));
  CHECK(has_rule(validate_network(NetworkSpec{}), NetworkRule::Shape));
  CHECK_THROWS_AS(NetworkSpec::from_rows({{0, 1}, {1}}, 0.1), std::invalid_argument);
}

TEST_CASE("all-zero weights are the unconnected network; partial sinks are rejected") {
  CHECK(validate_network(NetworkSpec::unconnected(4, 0.7)).empty());
  const auto issues = validate_network(NetworkSpec::from_rows({{0, 0.5, 0.5}, {1, 0, 0}, {0, 0, 0}}, 0.3));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].rule == NetworkRule::PartialSink);
  CHECK(issues[0].node == 2);
}

TEST_CASE("validate_network reports every violation") {
  const auto issues = validate_network(NetworkSpec::from_rows({{0.5, 0.1}, {0, 0}}, 1.2));
  CHECK(has_rule(issues, NetworkRule::Eta));
  CHECK(has_rule(issues, NetworkRule::Diagonal));
  CHECK(has_rule(issues, NetworkRule::RowSum));
  CHECK(has_rule(issues, NetworkRule::PartialSink));
}

TEST_CASE("labels default to 1-based indices") {
  NetworkSpec spec = two_cycle(0.0);
  CHECK(spec.label(1) == "2");
  spec.ids = {"a", "b"};
  CHECK(spec.label(1) == "b");
}

TEST_CASE("compute_kernel 2-cycle at eta 0.5") {
  const InfluenceKernel k = compute_kernel(two_cycle(0.5));
  CHECK(k(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(k(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(k(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(k(1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(k.eta() == 0.5);
}

TEST_CASE("compute_kernel is the identity at eta 0 and without edges") {
  std::mt19937_64 rng(7);
  const InfluenceKernel a = compute_kernel(testing::random_network(rng, 6, 0.0));
  const InfluenceKernel b = compute_kernel(NetworkSpec::unconnected(6, 0.8));
  for (std::size_t n = 0; n < 6; ++n)
    for (std::size_t m = 0; m < 6; ++m) {
      CHECK(a(n, m) == (n == m ? 1.0 : 0.0));
      CHECK(b(n, m) == (n == m ? 1.0 : 0.0));
    }
}

TEST_CASE("compute_kernel rejects invalid specs with every message") {
  try {
    compute_kernel(NetworkSpec::from_rows({{0.5, 0.5}, {0, 0.4}}, 0.5));
    FAIL("expected NetworkError");
  } catch (const NetworkError& e) {
    const std::string what = e.what();
    CHECK(what.find("w_11") != std::string::npos);
    CHECK(what.find("row 2 sums to 0.4") != std::string::npos);
  }
}

TEST_CASE("kernel identities on random networks") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const double eta = testing::uniform(rng, 0.0, 0.95);
    const NetworkSpec spec = testing::random_network(rng, n, eta);
    REQUIRE(validate_network(spec).empty());
    const InfluenceKernel k = compute_kernel(spec);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double prod = 0.0;  // ((I - eta W^T) W*)_ij
        for (std::size_t l = 0; l < n; ++l)
          prod += ((i == l ? 1.0 : 0.0) - eta * spec.weight(l, i)) * k(l, j);
        CHECK(std::abs(prod - (i == j ? 1.0 : 0.0)) <= kStructuralTolerance);
        CHECK(k(i, j) >= 0.0);
      }
      CHECK(k(i, i) >= 1.0);
      CHECK(std::abs(k.column_sum(i) - 1.0 / (1.0 - eta)) <= kStructuralTolerance);
    }
  }
}

TEST_CASE("diagonal is one exactly for a node on no cycle") {
  // node 1 feeds the 2-cycle {2, 3} but nothing feeds node 1
  const NetworkSpec spec = NetworkSpec::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 1, 0}}, 0.6);
  const InfluenceKernel k = compute_kernel(spec);
  CHECK(k(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k(1, 1) > 1.0);
  CHECK(k(2, 2) > 1.0);
}

TEST_CASE("diagonal is nondecreasing in eta") {
  std::mt19937_64 rng(5);
  const NetworkSpec base = testing::random_network(rng, 8, 0.0);
  std::vector<double> prev(8, 1.0);
  for (double eta = 0.05; eta < 0.95; eta += 0.05) {
    NetworkSpec spec = base;
    spec.eta = eta;
    const InfluenceKernel k = compute_kernel(spec);
    for (std::size_t n = 0; n < 8; ++n) {
      CHECK(k(n, n) >= prev[n] - 1e-14);
      prev[n] = k(n, n);
    }
  }
}

TEST_CASE("risk_levels examples") {
  const InfluenceKernel id = InfluenceKernel::identity(2);
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(risk_levels(id, zeros) == zeros);
  const std::vector<double> a{0.3, 0.7};
  CHECK(risk_levels(id, a) == a);
  const auto r = risk_levels(compute_kernel(two_cycle(0.5)), std::vector<double>{0.6, 0.6});
  CHECK(r[0] == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("risk_levels errors") {
  const InfluenceKernel id = InfluenceKernel::identity(2);
  CHECK_THROWS_AS(risk_levels(id, std::vector<double>{0.1}), std::invalid_argument);
  CHECK_THROWS_AS(risk_levels(id, std::vector<double>{0.1, 1.2}), std::invalid_argument);
  CHECK_THROWS_AS(risk_levels(id, std::vector<double>{-0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("risk_levels match the propagation fixed point") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const double eta = testing::uniform(rng, 0.0, 0.9);
    const NetworkSpec spec = testing::random_network(rng, n, eta);
    std::vector<double> alpha(n);
    for (double& a : alpha) a = testing::uniform(rng, 0.0, 1.0);

    std::vector<double> fixed = alpha;
    for (int it = 0; it < 2000; ++it) {
      std::vector<double> next = alpha;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) next[i] += eta * spec.weight(m, i) * fixed[m];
      fixed = next;
    }
    const auto r = risk_levels(compute_kernel(spec), alpha);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r[i] == doctest::Approx(fixed[i]).epsilon(1e-10));
      CHECK(r[i] >= alpha[i]);
    }
  }
}

TEST_CASE("risk_levels are monotone in every alpha") {
  std::mt19937_64 rng(17);
  const NetworkSpec spec = testing::random_network(rng, 6, 0.6);
  const InfluenceKernel k = compute_kernel(spec);
  std::vector<double> alpha(6, 0.3);
  const auto base = risk_levels(k, alpha);
  for (std::size_t m = 0; m < 6; ++m) {
    auto bumped = alpha;
    bumped[m] += 0.2;
    const auto r = risk_levels(k, bumped);
    for (std::size_t i = 0; i < 6; ++i) CHECK(r[i] >= base[i]);
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <vector>

#include "flipin/experiments.hpp"

using namespace flipin;

namespace {

std::vector<SweepRecord> of_mode(const std::vector<SweepRecord>& all, Mode mode) {
  std::vector<SweepRecord> out;
  for (const auto& r : all)
    if (r.mode == mode) out.push_back(r);
  return out;
}

std::vector<SweepRecord> sweep(const char* name, SweepMode mode) {
  return run_sweep(preset_config(*find_preset(name), mode));
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("presets are compiled in and valid") {
  for (const char* name : {"fig8a", "fig8b", "fig9", "fig10"}) {
    const Preset* p = find_preset(name);
    REQUIRE(p != nullptr);
    CHECK(validate_network(p->network).empty());
    CHECK(p->params.size() == p->network.node_count);
    CHECK(p->sweep.from == 0.0);
    CHECK(p->sweep.to == 0.9);
  }
  CHECK(find_preset("fig11") == nullptr);
  CHECK(find_preset("fig8a")->network.node_count == 6);
  CHECK(find_preset("fig8b")->network.weight(0, 5) == 0.2);
  CHECK(find_preset("fig9")->network.weight(3, 0) == 1.0);
  CHECK(find_preset("fig10")->params[3].c_d == 4.0);
}

TEST_CASE("sweep points") {
  const EtaSweep s{0.0, 0.9, 91};
  CHECK(s.at(0) == 0.0);
  CHECK(s.at(32) == doctest::Approx(0.32).epsilon(1e-14));
  CHECK(s.at(90) == 0.9);
}

TEST_CASE("config validation names the rule") {
  ExperimentConfig cfg = preset_config(*find_preset("fig8a"));
  CHECK_NOTHROW(validate(cfg));
  auto message = [](const ExperimentConfig& c) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  ExperimentConfig bad = cfg;
  bad.sweep->steps = 1;
  CHECK(message(bad) == "sweep: steps must be >= 2");
  bad = cfg;
  bad.sweep->to = 1.0;
  CHECK(message(bad).rfind("sweep: bounds", 0) == 0);
  bad = cfg;
  bad.params.pop_back();
  CHECK(message(bad).rfind("params:", 0) == 0);
  bad = cfg;
  bad.params[2].c_a = 0.0;
  CHECK(message(bad).find("node 3") != std::string::npos);
  bad = cfg;
  bad.network.weight(1, 1) = 0.5;
  CHECK(message(bad).find("w_22") != std::string::npos);
  CHECK(parse_sweep_mode("both") == SweepMode::Both);
  CHECK_FALSE(parse_sweep_mode("x").has_value());
}

TEST_CASE("records come in sweep order, distributed first") {
  ExperimentConfig cfg = preset_config(*find_preset("fig9"));
  cfg.sweep = EtaSweep{0.1, 0.7, 13};
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 26);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].mode == (i % 2 == 0 ? Mode::Distributed : Mode::Centralized));
    CHECK(records[i].eta == cfg.sweep->at(i / 2));
  }
}

TEST_CASE("sweeps do not depend on the thread count") {
  ExperimentConfig one = preset_config(*find_preset("fig10"));
  one.threads = 1;
  ExperimentConfig many = one;
  many.threads = 8;
  const auto a = run_sweep(one);
  const auto b = run_sweep(many);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].L_d_total == b[i].L_d_total);
    CHECK(a[i].T_total == b[i].T_total);
    for (std::size_t n = 0; n < a[i].nodes.size(); ++n) CHECK(a[i].nodes[n].alpha == b[i].nodes[n].alpha);
  }
}

TEST_CASE("without a sweep the network's own eta is solved once") {
  ExperimentConfig cfg = preset_config(*find_preset("fig8b"), SweepMode::Centralized);
  cfg.sweep.reset();
  cfg.network.eta = 0.2;
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].eta == 0.2);
  CHECK(records[0].solver == "closed_form");
}

TEST_CASE("record fields are consistent") {
  for (const auto& rec : sweep("fig10", SweepMode::Both)) {
    double t = 0.0;
    double li = 0.0;
    double ld = 0.0;
    for (const auto& n : rec.nodes) {
      if (!n.insurable) {
        CHECK(n.T == 0.0);
        CHECK_FALSE(n.s.has_value());
      }
      CHECK(n.L_d == doctest::Approx(n.L_d_bare + n.T).epsilon(1e-12));
      t += n.T;
      li += n.L_i;
      ld += n.L_d;
    }
    CHECK(t == doctest::Approx(rec.T_total).epsilon(1e-12));
    CHECK(li == doctest::Approx(rec.L_i_total).epsilon(1e-9).scale(1.0));
    CHECK(ld == doctest::Approx(rec.L_d_total).epsilon(1e-12));
  }
}

TEST_CASE("fig8a: premiums rise then drop, centralized first") {
  const auto all = sweep("fig8a", SweepMode::Both);
  const auto d = of_mode(all, Mode::Distributed);
  const auto c = of_mode(all, Mode::Centralized);
  double prev = 0.0;
  bool dropped = false;
  double d_cut = -1.0;
  for (const auto& r : d) {
    if (r.T_total == 0.0) {
      if (!dropped) d_cut = r.eta;
      dropped = true;
      continue;
    }
    CHECK_FALSE(dropped);
    CHECK(r.T_total >= prev);
    prev = r.T_total;
  }
  double c_cut = -1.0;
  for (const auto& r : c) {
    if (r.T_total == 0.0) {
      c_cut = r.eta;
      break;
    }
  }
  CHECK(std::abs(c_cut - 0.3171) <= 0.01);
  CHECK(d_cut > c_cut);
}

TEST_CASE("fig9: the best-connected node is least insurable") {
  const auto d = of_mode(sweep("fig9", SweepMode::Distributed), Mode::Distributed);
  double cut1 = 1.0;
  double cut_other = 1.0;
  for (const auto& r : d) {
    for (std::size_t n = 1; n < 4; ++n) {
      if (r.nodes[0].insurable) CHECK(r.nodes[0].T >= r.nodes[n].T);
      if (!r.nodes[n].insurable) cut_other = std::min(cut_other, r.eta);
    }
    if (!r.nodes[0].insurable) cut1 = std::min(cut1, r.eta);
  }
  CHECK(cut1 < cut_other);
}

TEST_CASE("fig10: node 1 is never insurable on its own") {
  for (const auto& r : sweep("fig10", SweepMode::Distributed)) CHECK_FALSE(r.nodes[0].insurable);
}

}  // TEST_SUITE

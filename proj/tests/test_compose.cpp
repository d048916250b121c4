#include "doctest.h"

#include <set>

#include "json.hpp"
#include "helpers.hpp"
#include "tickmc/compose.hpp"
#include "tickmc/error.hpp"
#include "tickmc/uvc.hpp"

using namespace tickmc;
using testutil::make_config;
using testutil::rat;

namespace {

SparseDtmc compose_uvc(const std::string& scenario, int n_ticks) {
  const Network net = build_uvc_network();
  for (const ScenarioConfig& cfg : scenario_table(n_ticks)) {
    if (cfg.name == scenario) return compose(bind_constants(net, cfg));
  }
  throw std::runtime_error("unknown scenario " + scenario);
}

double row_sum(const SparseDtmc& d, std::uint32_t s) {
  double sum = 0.0;
  for (double p : d.row_probs(s)) sum += p;
  return sum;
}

}  // namespace

TEST_CASE("zero horizon composes to a single absorbing state") {
  const SparseDtmc d =
      compose(bind_constants(testutil::coin_pair(), make_config("c", {{"H", rat(0)}})));
  REQUIRE(d.state_count() == 1);
  CHECK(d.initial == 0);
  CHECK(d.ticks_of(0) == 0);
  CHECK(d.done_of(0));
  REQUIRE(d.row_cols(0).size() == 1);
  CHECK(d.row_cols(0)[0] == 0);
  CHECK(d.row_probs(0)[0] == 1.0);
}

TEST_CASE("independent coins multiply out to a uniform layer") {
  const SparseDtmc d =
      compose(bind_constants(testutil::coin_pair(), make_config("c", {{"H", rat(1)}})));
  REQUIRE(d.state_count() == 5);  // initial + 4 outcomes
  REQUIRE(d.row_cols(0).size() == 4);
  for (double p : d.row_probs(0)) CHECK(p == 0.25);
  for (std::uint32_t s = 1; s < 5; ++s) {
    CHECK(d.ticks_of(s) == 1);
    REQUIRE(d.row_cols(s).size() == 1);
    CHECK(d.row_cols(s)[0] == s);  // horizon self-loop
  }
}

TEST_CASE("branch probabilities into the same successor accumulate") {
  // Both branches land in the same target state with different updates that
  // cancel out -- the composer must merge them into one edge.
  const Network net = testutil::parse_good_model(R"(
const H : count;
horizon H;
machine M {
  initial A;
  state A, B;
  from A goto [0.25] B or [0.75] B;
  from B goto [1] B;
}
)");
  const SparseDtmc d = compose(bind_constants(net, make_config("c", {{"H", rat(2)}})));
  REQUIRE(d.row_cols(0).size() == 1);
  CHECK(d.row_probs(0)[0] == 1.0);
}

TEST_CASE("uvc composition stays within the reachable bound") {
  for (const char* scenario : {"deliberate_failure", "aware_normal", "lessAware_highPerformance"}) {
    const SparseDtmc d = compose_uvc(scenario, 5);
    CHECK(d.state_count() <= 288);  // 4 * 3 * 4 zones/verdicts/modes, 6 layers
    CHECK(d.state_count() >= 6);
    CHECK(d.horizon == 5);
    CHECK(d.machine_names ==
          std::vector<std::string>{"Human", "ODS", "Robot"});
    CHECK(d.var_names == std::vector<std::string>{"shuman", "sods", "srobot"});
  }
}

TEST_CASE("every row is stochastic within 1e-9") {
  for (const ScenarioConfig& cfg : scenario_table(5)) {
    const SparseDtmc d = compose(bind_constants(build_uvc_network(), cfg));
    for (std::uint32_t s = 0; s < d.state_count(); ++s) {
      CHECK(std::abs(row_sum(d, s) - 1.0) <= 1e-9);
    }
    CHECK(d.warnings.empty());
  }
}

TEST_CASE("tick layering: every edge advances the counter by one") {
  const SparseDtmc d = compose_uvc("aware_normal", 5);
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    const int layer = d.ticks_of(s);
    for (std::uint32_t target : d.row_cols(s)) {
      if (layer == d.horizon) {
        CHECK(target == s);  // absorbing
      } else {
        CHECK(d.ticks_of(target) == layer + 1);
      }
    }
  }
  CHECK(d.ticks_of(d.initial) == 0);
}

TEST_CASE("deliberate scenarios have a deterministic human prefix") {
  // With all approach probabilities 1 and a failed ODS, only the robot
  // branches: exactly two states at layer 1.
  const SparseDtmc d = compose_uvc("deliberate_failure", 5);
  int layer1 = 0;
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    if (d.ticks_of(s) == 1) ++layer1;
  }
  CHECK(layer1 == 2);
}

TEST_CASE("composition is deterministic") {
  const SparseDtmc a = compose_uvc("aware_normal", 5);
  const SparseDtmc b = compose_uvc("aware_normal", 5);
  CHECK(a.state_blob == b.state_blob);
  CHECK(a.row_offsets == b.row_offsets);
  CHECK(a.cols == b.cols);
  CHECK(a.probs == b.probs);  // bitwise, not approximate
  CHECK(a.labels == b.labels);
}

TEST_CASE("state cap aborts composition") {
  ComposeOptions opts;
  opts.state_cap = 3;
  try {
    compose(bind_constants(build_uvc_network(), scenario_table(5).front()), opts);
    FAIL("cap not enforced");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::state_cap_exceeded);
  }
}

TEST_CASE("labels index var=value pairs and deadlock") {
  const SparseDtmc d = compose_uvc("deliberate_failure", 5);
  REQUIRE(d.labels.count("shuman=inRed") == 1);
  REQUIRE(d.labels.count("deadlock") == 1);
  CHECK(d.labels.at("deadlock").empty());

  // Failure ODS never detects: the detection labels index no state.
  CHECK(d.labels.at("sods=humanDetectedInGreen").empty());
  CHECK(d.labels.at("sods=humanDetectedInYellow").empty());

  // Label entries are sorted and in range.
  for (const auto& [name, states] : d.labels) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      CHECK(states[i] < d.state_count());
      if (i > 0) CHECK(states[i - 1] < states[i]);
    }
  }

  // Every state with shuman==inRed is indexed by the label.
  const int shuman = 0;
  const int in_red = 3;
  std::vector<std::uint32_t> expected;
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    if (d.value_of(s, shuman) == in_red) expected.push_back(s);
  }
  CHECK(d.labels.at("shuman=inRed") == expected);
}

TEST_CASE("drop_outgoing rebuilds the chain with a deadlock") {
  SparseDtmc d = compose_uvc("deliberate_failure", 5);
  REQUIRE(d.state_count() > 3);
  const std::uint32_t victim = 2;
  const std::size_t edges_before = d.cols.size();
  const std::size_t dropped = d.row_cols(victim).size();
  drop_outgoing(d, victim);
  CHECK(d.row_cols(victim).empty());
  CHECK(d.cols.size() == edges_before - dropped);
  REQUIRE(d.labels.count("deadlock") == 1);
  CHECK(d.labels.at("deadlock") == std::vector<std::uint32_t>{victim});

  try {
    drop_outgoing(d, d.state_count());
    FAIL("bad index accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::out_of_range);
  }
}

TEST_CASE("describe names machines, variables and ticks") {
  const SparseDtmc d = compose_uvc("deliberate_failure", 5);
  const std::string text = d.describe(d.initial);
  CHECK(text.find("Human=OutOfRange") != std::string::npos);
  CHECK(text.find("shuman=outOfRange") != std::string::npos);
  CHECK(text.find("ticks=0") != std::string::npos);
}

TEST_CASE("dot export is well-formed") {
  const SparseDtmc d =
      compose(bind_constants(testutil::coin_pair(), make_config("c", {{"H", rat(1)}})));
  const std::string dot = to_dot(d);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rankdir=LR") != std::string::npos);
  CHECK(dot.find("0.250000") != std::string::npos);
  CHECK(dot.find("CoinA=Heads") != std::string::npos);
  // One node line per state, one edge line per matrix entry.
  CHECK(dot.find("5 [") == std::string::npos);  // states are 0..4
}

TEST_CASE("state space json matches the chain") {
  const SparseDtmc d = compose_uvc("deliberate_failure", 2);
  const auto j = nlohmann::json::parse(state_space_json(d));
  REQUIRE(j.contains("states"));
  REQUIRE(j.contains("edges"));
  CHECK(j["states"].size() == d.state_count());
  CHECK(j["edges"].size() == d.cols.size());
  CHECK(j["states"][0]["index"] == 0);
  CHECK(j["states"][0]["machineStates"]["Human"] == "OutOfRange");
  CHECK(j["states"][0]["valuation"]["shuman"] == "outOfRange");
  CHECK(j["states"][0]["ticks"] == 0);
  double p = j["edges"][0]["p"].get<double>();
  CHECK(p > 0.0);
  CHECK(p <= 1.0);
}

#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "tickmc/compose.hpp"
#include "tickmc/engine.hpp"
#include "tickmc/error.hpp"
#include "tickmc/simulate.hpp"
#include "tickmc/uvc.hpp"

using namespace tickmc;
using testutil::make_config;
using testutil::rat;

namespace {

ConcreteNetwork chain(int horizon) {
  return bind_constants(testutil::hit_chain(),
                        make_config("c", {{"p", rat(1, 4)}, {"H", rat(horizon)}}));
}

Query hit_query(TickMode mode, std::optional<int> t) {
  Query q;
  q.id = "Q";
  q.kind = QueryKind::probability;
  q.predicate = {{"hit", "yes", false}};
  q.tick_mode = mode;
  q.tick_value = t;
  return q;
}

ConcreteNetwork uvc_scenario(const std::string& name, int n_ticks) {
  for (const ScenarioConfig& cfg : scenario_table(n_ticks)) {
    if (cfg.name == name) return bind_constants(build_uvc_network(), cfg);
  }
  throw std::runtime_error("unknown scenario " + name);
}

}  // namespace

TEST_CASE("traces have one snapshot per tick and run the semantics") {
  const ConcreteNetwork cnet = uvc_scenario("deliberate_failure", 6);
  const Trace trace = simulate_run(cnet, 7);
  REQUIRE(trace.snapshots.size() == 7);
  for (int tick = 0; tick <= 6; ++tick) {
    CHECK(trace.snapshots[tick].ticks == tick);
    CHECK(trace.snapshots[tick].done == (tick == 6));
  }
  // Deliberate approach is deterministic: green at tick 1, yellow at 2,
  // red from tick 3 on (no retreat: awareness fires with p = 0.01 only).
  CHECK(trace.snapshots[0].valuation[0] == 0);
  CHECK(trace.snapshots[1].valuation[0] == 1);
  CHECK(trace.snapshots[2].valuation[0] == 2);
  CHECK(trace.snapshots[3].valuation[0] == 3);
}

TEST_CASE("same seed reproduces the trace, different seeds diverge") {
  const ConcreteNetwork cnet = uvc_scenario("aware_normal", 20);
  const Trace a = simulate_run(cnet, 42);
  const Trace b = simulate_run(cnet, 42);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].locals == b.snapshots[i].locals);
    CHECK(a.snapshots[i].valuation == b.snapshots[i].valuation);
  }

  bool diverged = false;
  for (std::uint64_t seed = 43; seed < 48 && !diverged; ++seed) {
    const Trace c = simulate_run(cnet, seed);
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
      if (a.snapshots[i].locals != c.snapshots[i].locals ||
          a.snapshots[i].valuation != c.snapshots[i].valuation) {
        diverged = true;
        break;
      }
    }
  }
  CHECK(diverged);
}

TEST_CASE("estimates are deterministic and thread-count invariant") {
  const ConcreteNetwork cnet = uvc_scenario("deliberate_normal", 10);
  Query p1;
  p1.id = "P1";
  p1.kind = QueryKind::probability;
  p1.predicate = {{"shuman", "inRed", false}, {"srobot", "transitionRow", false}};
  p1.tick_mode = TickMode::cumulative;
  p1.tick_value = 10;

  const Estimate serial = estimate_probability(cnet, p1, 50000, 42, 1);
  const Estimate threaded = estimate_probability(cnet, p1, 50000, 42, 8);
  CHECK(serial.p_hat == threaded.p_hat);  // bitwise equality
  CHECK(serial.std_err == threaded.std_err);
  CHECK(serial.samples == 50000);
  CHECK(serial.seed == 42);
  CHECK(serial.t == 10);
  CHECK(serial.property == "P1");
  CHECK(serial.config == "deliberate_normal");

  const Estimate rerun = estimate_probability(cnet, p1, 50000, 42, 3);
  CHECK(rerun.p_hat == serial.p_hat);

  const Estimate other_seed = estimate_probability(cnet, p1, 50000, 4242, 1);
  CHECK(other_seed.p_hat != serial.p_hat);
}

TEST_CASE("estimates track the exact engine within four standard errors") {
  const ConcreteNetwork cnet = chain(8);
  const SparseDtmc d = compose(cnet);

  for (const TickMode mode : {TickMode::exact, TickMode::cumulative}) {
    const Query q = hit_query(mode, 6);
    const double exact = eval_query(d, q).points[0].second;
    const Estimate est = estimate_probability(cnet, q, 200000, 42, 4);
    const double sigma = std::sqrt(exact * (1.0 - exact) / 200000.0);
    CHECK(std::abs(est.p_hat - exact) <= 4.0 * sigma);
  }
}

TEST_CASE("cumulative equals exact at the first possible hit tick") {
  // Under deliberate_failure the predicate needs shuman==inRed, first true at
  // tick 3, so first-hit mass by tick 3 equals occupancy at tick 3 (= 0.091).
  const ConcreteNetwork cnet = uvc_scenario("deliberate_failure", 30);
  Query p1;
  p1.id = "P1";
  p1.kind = QueryKind::probability;
  p1.predicate = {{"shuman", "inRed", false}, {"srobot", "transitionRow", false}};
  p1.tick_value = 3;

  p1.tick_mode = TickMode::exact;
  const Estimate exact = estimate_probability(cnet, p1, 400000, 42, 4);
  p1.tick_mode = TickMode::cumulative;
  const Estimate cumulative = estimate_probability(cnet, p1, 400000, 42, 4);

  const double sigma = std::sqrt(0.091 * (1.0 - 0.091) / 400000.0);
  CHECK(std::abs(exact.p_hat - 0.091) <= 4.0 * sigma);
  CHECK(std::abs(cumulative.p_hat - 0.091) <= 4.0 * sigma);
}

TEST_CASE("mode none estimates within-horizon reachability") {
  const ConcreteNetwork cnet = chain(8);
  const Query q = hit_query(TickMode::none, std::nullopt);
  const Estimate est = estimate_probability(cnet, q, 200000, 42, 2);
  CHECK_FALSE(est.t.has_value());
  const double exact = 1.0 - std::pow(0.75, 8);
  const double sigma = std::sqrt(exact * (1.0 - exact) / 200000.0);
  CHECK(std::abs(est.p_hat - exact) <= 4.0 * sigma);
}

TEST_CASE("estimate_probability rejects invalid requests") {
  const ConcreteNetwork cnet = chain(8);

  Query deadlock;
  deadlock.id = "P2";
  deadlock.kind = QueryKind::deadlock_freedom;
  try {
    estimate_probability(cnet, deadlock, 1000, 42);
    FAIL("deadlock query accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  try {
    estimate_probability(cnet, hit_query(TickMode::exact, 3), 0, 42);
    FAIL("zero samples accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  try {
    estimate_probability(cnet, hit_query(TickMode::exact, std::nullopt), 1000, 42);
    FAIL("symbolic t accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  try {
    estimate_probability(cnet, hit_query(TickMode::exact, 9), 1000, 42);
    FAIL("t beyond horizon accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  Query bad_var = hit_query(TickMode::exact, 3);
  bad_var.predicate = {{"zz", "yes", false}};
  try {
    estimate_probability(cnet, bad_var, 1000, 42);
    FAIL("unknown variable accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::unknown_identifier);
  }
}

TEST_CASE("std_err matches the binomial formula") {
  const ConcreteNetwork cnet = chain(8);
  const Estimate est = estimate_probability(cnet, hit_query(TickMode::cumulative, 4), 10000, 7);
  CHECK(est.std_err ==
        doctest::Approx(std::sqrt(est.p_hat * (1.0 - est.p_hat) / 10000.0)).epsilon(1e-12));
}

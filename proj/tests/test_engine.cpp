#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "tickmc/compose.hpp"
#include "tickmc/engine.hpp"
#include "tickmc/error.hpp"
#include "tickmc/uvc.hpp"

using namespace tickmc;
using testutil::make_config;
using testutil::rat;

namespace {

ConcreteNetwork chain_with(double p_num, double p_den, int horizon) {
  return bind_constants(testutil::hit_chain(),
                        make_config("c", {{"p", rat(p_num, p_den)},
                                          {"H", rat(horizon)}}));
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

Query p1_query(TickMode mode, std::optional<int> t) {
  Query q;
  q.id = "P1";
  q.kind = QueryKind::probability;
  q.predicate = {{"shuman", "inRed", false}, {"srobot", "transitionRow", false}};
  q.tick_mode = mode;
  q.tick_value = t;
  return q;
}

}  // namespace

TEST_CASE("transient distribution follows the chain") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  const auto d0 = transient_distribution(d, 0);
  CHECK(d0[d.initial] == 1.0);

  const auto d1 = transient_distribution(d, 1);
  double sum = 0.0;
  double hit_mass = 0.0;
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    sum += d1[s];
    if (d.value_of(s, 0) == 1) hit_mass += d1[s];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hit_mass == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("bounded reachability of a geometric hit") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  Query q = hit_query(TickMode::cumulative, 2);
  const QueryResult r = eval_query(d, q);
  REQUIRE(r.points.size() == 1);
  // 1 - (3/4)^2
  CHECK(r.points[0].second == doctest::Approx(0.4375).epsilon(1e-14));
  CHECK(r.mode == "cumulative");
  CHECK(r.state_count == d.state_count());

  // Absorbing flag: exact-tick occupancy equals cumulative reach here.
  const QueryResult e = eval_query(d, hit_query(TickMode::exact, 2));
  CHECK(e.points[0].second == doctest::Approx(0.4375).epsilon(1e-14));
  CHECK(e.mode == "exact");
}

TEST_CASE("probability at tick zero is zero for a non-initial target") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  CHECK(eval_query(d, hit_query(TickMode::exact, 0)).points[0].second == 0.0);
  CHECK(eval_query(d, hit_query(TickMode::cumulative, 0)).points[0].second == 0.0);
}

TEST_CASE("mode none scans the whole horizon") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  const QueryResult r = eval_query(d, hit_query(TickMode::none, std::nullopt));
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].first == d.horizon);
  CHECK(r.points[0].second == doctest::Approx(1.0 - std::pow(0.75, 4)).epsilon(1e-14));
  CHECK(r.mode == "none");
}

TEST_CASE("cumulative sweeps are monotone and match closed form") {
  const SparseDtmc d = compose(chain_with(1, 10, 12));
  Query q = hit_query(TickMode::cumulative, std::nullopt);
  q.sweep = {{0, 12}};
  const QueryResult r = eval_query(d, q);
  REQUIRE(r.points.size() == 13);
  double prev = -1.0;
  for (const auto& [t, p] : r.points) {
    CHECK(p == doctest::Approx(1.0 - std::pow(0.9, t)).epsilon(1e-12));
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("engine agrees with the path oracle on the chain") {
  const ConcreteNetwork cnet = chain_with(1, 3, 6);
  const SparseDtmc d = compose(cnet);
  const ResolvedNetwork rnet = resolve(cnet);
  testutil::PathOracle oracle(rnet);
  const auto pred = testutil::var_equals(0, 1);  // hit == yes

  for (int t = 0; t <= 6; ++t) {
    const double exact_engine = eval_query(d, hit_query(TickMode::exact, t)).points[0].second;
    const double exact_oracle = oracle.probability(pred, TickMode::exact, t);
    CHECK(std::abs(exact_engine - exact_oracle) <= 1e-14);

    const double cum_engine =
        eval_query(d, hit_query(TickMode::cumulative, t)).points[0].second;
    const double cum_oracle = oracle.probability(pred, TickMode::cumulative, t);
    CHECK(std::abs(cum_engine - cum_oracle) <= 1e-14);
  }
}

TEST_CASE("hand-computed hazard value at tick three") {
  // Deliberate human, failed ODS: human is surely in the red zone at tick 3;
  // the robot chain contributes 0.1 -> 0.09 -> 0.091.
  const SparseDtmc d = compose(uvc_scenario("deliberate_failure", 30));
  const double p = eval_query(d, p1_query(TickMode::exact, 3)).points[0].second;
  CHECK(std::abs(p - 0.091) <= 1e-12);
}

TEST_CASE("deadlock detection") {
  SparseDtmc d = compose(uvc_scenario("deliberate_failure", 5));
  CHECK(find_deadlocks(d).empty());

  Query q;
  q.id = "P2";
  q.kind = QueryKind::deadlock_freedom;
  QueryResult r = eval_query(d, q);
  REQUIRE(r.deadlock_free.has_value());
  CHECK(*r.deadlock_free);
  CHECK(r.mode == "deadlock");
  CHECK(r.points.empty());

  drop_outgoing(d, 1);
  CHECK(find_deadlocks(d) == std::vector<std::uint32_t>{1});
  r = eval_query(d, q);
  REQUIRE(r.deadlock_free.has_value());
  CHECK_FALSE(*r.deadlock_free);
}

TEST_CASE("query validation errors") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));

  Query unresolved = hit_query(TickMode::exact, std::nullopt);
  unresolved.symbolic_t = true;
  try {
    eval_query(d, unresolved);
    FAIL("symbolic t accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  try {
    eval_query(d, hit_query(TickMode::exact, 5));
    FAIL("t beyond horizon accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  try {
    eval_query(d, hit_query(TickMode::exact, -1));
    FAIL("negative t accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::invalid_query);
  }

  Query unknown_var = hit_query(TickMode::exact, 1);
  unknown_var.predicate = {{"zz", "yes", false}};
  try {
    eval_query(d, unknown_var);
    FAIL("unknown variable accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::unknown_identifier);
  }

  Query unknown_value = hit_query(TickMode::exact, 1);
  unknown_value.predicate = {{"hit", "zz", false}};
  try {
    eval_query(d, unknown_value);
    FAIL("unknown value accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::unknown_identifier);
  }
}

TEST_CASE("negated atoms select the complement") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  Query q = hit_query(TickMode::exact, 2);
  q.predicate = {{"hit", "no", true}};  // hit != no, same as hit == yes here
  CHECK(eval_query(d, q).points[0].second == doctest::Approx(0.4375).epsilon(1e-14));
}

TEST_CASE("sweep results are independent of engine thread count") {
  const SparseDtmc d = compose(uvc_scenario("aware_normal", 20));
  Query q = p1_query(TickMode::cumulative, std::nullopt);
  q.sweep = {{0, 20}};

  EngineOptions serial;
  serial.threads = 1;
  EngineOptions parallel;
  parallel.threads = 8;
  const QueryResult a = eval_query(d, q, serial);
  const QueryResult b = eval_query(d, q, parallel);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].first == b.points[i].first);
    CHECK(a.points[i].second == b.points[i].second);  // bitwise
  }
}

TEST_CASE("target_mask scopes by tick layer") {
  const SparseDtmc d = compose(chain_with(1, 4, 4));
  const Query exact = hit_query(TickMode::exact, 2);
  const auto mask = target_mask(d, exact, 2);
  REQUIRE(mask.size() == d.state_count());
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    const bool expect = d.value_of(s, 0) == 1 && d.ticks_of(s) == 2;
    CHECK(static_cast<bool>(mask[s]) == expect);
  }

  const Query cum = hit_query(TickMode::cumulative, 2);
  const auto cmask = target_mask(d, cum, 2);
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    const bool expect = d.value_of(s, 0) == 1 && d.ticks_of(s) <= 2;
    CHECK(static_cast<bool>(cmask[s]) == expect);
  }
}

TEST_CASE("ods dominance spot checks") {
  // Same awareness, better ODS => lower hazard probability (cumulative).
  const SparseDtmc fail = compose(uvc_scenario("deliberate_failure", 15));
  const SparseDtmc norm = compose(uvc_scenario("deliberate_normal", 15));
  const SparseDtmc high = compose(uvc_scenario("deliberate_highPerformance", 15));
  const Query q = p1_query(TickMode::cumulative, 10);
  const double pf = eval_query(fail, q).points[0].second;
  const double pn = eval_query(norm, q).points[0].second;
  const double ph = eval_query(high, q).points[0].second;
  CHECK(pf >= pn);
  CHECK(pn >= ph);
  CHECK(ph > 0.0);
}

// Monte Carlo simulation of a concrete network.
//
// The simulator executes the network semantics directly (sharing only the
// model representation with the composer) and serves as a statistical oracle
// for the exact engine.  Every sample draws from its own RNG stream derived
// from (seed, sampleIndex), so estimates are independent of execution order
// and thread count.
#pragma once

#include <cstdint>
#include <vector>

#include "tickmc/model.hpp"
#include "tickmc/query.hpp"
#include "tickmc/resolve.hpp"

namespace tickmc {

struct Trace {
  // Snapshots at ticks 0..horizon (horizon + 1 entries); every step is a
  // positive-probability macro-step.
  std::vector<GlobalState> snapshots;
};

struct Estimate {
  std::string property;
  std::string config;
  std::optional<int> t;
  double p_hat = 0.0;
  double std_err = 0.0;  // sqrt(p_hat * (1 - p_hat) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// One full trajectory of `cnet` under the given seed.
Trace simulate_run(const ConcreteNetwork& cnet, std::uint64_t seed);

// Same, on an already resolved network (avoids re-resolving per sample).
Trace simulate_run(const ResolvedNetwork& rnet, std::uint64_t seed);

// Estimates a probability query by sampling `samples` independent runs.
// Exact-tick queries test the predicate at snapshot t, cumulative at any
// snapshot <= t, and mode `none` at any snapshot within the horizon.  Throws
// Error{invalid_query} for deadlock-freedom queries, zero samples, or an
// unresolved / out-of-range t.
Estimate estimate_probability(const ConcreteNetwork& cnet, const Query& query,
                              std::uint64_t samples, std::uint64_t seed,
                              int threads = 1);

}  // namespace tickmc

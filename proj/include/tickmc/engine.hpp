// Probabilistic analysis of a composed chain: transient distributions,
// bounded reachability and deadlock detection.
#pragma once

#include <cstdint>
#include <vector>

#include "tickmc/compose.hpp"
#include "tickmc/query.hpp"

namespace tickmc {

struct EngineOptions {
  int threads = 1;  // independent sweep points may evaluate concurrently
};

// Distribution over states after exactly t macro-steps (forward propagation
// of the initial point mass; entries sum to 1 within 1e-9).
std::vector<double> transient_distribution(const SparseDtmc& dtmc, int t);

// Probability of reaching a target state within `horizon` steps.  Forward
// accumulation: target states absorb mass as it arrives.  `target` has one
// flag per state.
double bounded_reachability(const SparseDtmc& dtmc, const std::vector<char>& target,
                            int horizon);

// States with no outgoing transitions, ascending.
std::vector<std::uint32_t> find_deadlocks(const SparseDtmc& dtmc);

// Evaluates a fully resolved query (see query.hpp):
//   - probability queries need a concrete tick value or sweep range unless
//     their tick mode is `none`; each sweep point is evaluated independently;
//   - deadlock-freedom queries report find_deadlocks(dtmc).empty().
// Throws Error{invalid_query} for unresolved symbolic t or out-of-range t and
// Error{unknown_identifier} for predicate atoms naming unknown variables or
// values.
QueryResult eval_query(const SparseDtmc& dtmc, const Query& query,
                       const EngineOptions& options = {});

// Target mask for a query predicate at one tick scope; exposed for tests.
std::vector<char> target_mask(const SparseDtmc& dtmc, const Query& query, int t);

}  // namespace tickmc

// Index-resolved view of a concrete network.
//
// Resolution lowers names to dense indices and branch weights to doubles so
// that the composer and the simulator can execute macro-steps without string
// lookups.  Both consume this representation but implement the step
// semantics independently (exhaustive enumeration vs. sampling).
#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tickmc/model.hpp"

namespace tickmc {

struct ResolvedGuard {
  enum class Op { truth, eq, ne, conj, disj, neg };
  using Ptr = std::shared_ptr<const ResolvedGuard>;

  Op op = Op::truth;
  int var = -1;    // eq / ne
  int value = -1;  // eq / ne
  Ptr lhs, rhs;

  bool eval(std::span<const int> valuation) const;
};

struct ResolvedUpdate {
  int var = -1;
  int value = -1;
};

struct ResolvedBranch {
  double weight = 0.0;  // > 0; zero-weight branches are pruned at resolve time
  int target = -1;
  std::vector<ResolvedUpdate> updates;
};

struct ResolvedTransition {
  int source = -1;
  ResolvedGuard::Ptr guard;
  std::vector<ResolvedBranch> branches;
};

struct ResolvedMachine {
  std::string name;
  std::vector<std::string> state_names;
  int initial = -1;
  // Transitions grouped by source state, in canonical (guard text) order.
  std::vector<std::vector<ResolvedTransition>> from;
};

struct ResolvedNetwork {
  std::vector<ResolvedMachine> machines;
  std::vector<std::string> var_names;
  std::vector<std::vector<std::string>> value_names;  // per var, domain values
  std::vector<int> initial_valuation;
  int horizon = 0;

  // The unique enabled transition of machine m in local state s under the
  // given valuation, or nullptr when the machine idles this tick.  Validation
  // guarantees uniqueness.
  const ResolvedTransition* enabled(int m, int s, std::span<const int> valuation) const;

  int var_index(const std::string& name) const;            // -1 when absent
  int value_index(int var, const std::string& name) const;  // -1 when absent
};

// Requires a validated, fully bound network (see bind_constants).
ResolvedNetwork resolve(const ConcreteNetwork& cnet);

}  // namespace tickmc

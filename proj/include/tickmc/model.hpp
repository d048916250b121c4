// Intermediate representation of a network of tick-synchronized
// probabilistic state machines.
//
// Semantics in one paragraph: all machines of a network advance in lockstep,
// one joint macro-step per tick.  Within a tick the machines update
// sequentially in network declaration order; a machine evaluates its guards
// against the shared-variable valuation as already updated by its
// predecessors in the same tick.  From each local state, at most one outgoing
// transition may be enabled (guards are mutually exclusive); if none is, the
// machine idles (implicit self-loop).  An enabled transition selects one of
// its weighted branches, moves to the branch target and applies the branch's
// shared-variable updates.  A built-in counter `ticks` increments at the end
// of every macro-step; once it reaches the network horizon the global state
// is absorbing.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tickmc/diagnostics.hpp"
#include "tickmc/expr.hpp"
#include "tickmc/rational.hpp"

namespace tickmc {

struct EnumDomain {
  std::string name;
  std::vector<std::string> values;  // order is semantic (e.g. nested zones)
  SourceSpan span;

  int index_of(const std::string& value) const;  // -1 when absent
};

struct SharedVar {
  std::string name;
  std::string domain;
  std::string initial;
  SourceSpan span;
};

enum class ConstKind { probability, count, ratio };

struct ConstantDef {
  std::string name;
  ConstKind kind = ConstKind::probability;
  std::optional<Rational> value;  // unbound constants are bound by configs
  SourceSpan span;
};

struct Update {
  std::string var;
  std::string value;
  SourceSpan span;
};

struct Branch {
  ProbExpr::Ptr weight;
  std::string target;
  std::vector<Update> updates;
  SourceSpan span;
};

struct Transition {
  std::string source;
  GuardExpr::Ptr guard;  // never null; GuardExpr::truth() when unconditional
  std::vector<Branch> branches;
  SourceSpan span;
};

struct MachineDef {
  std::string name;
  std::vector<std::string> states;
  std::string initial;
  std::vector<Transition> transitions;
  std::vector<std::string> writes;  // derived: shared vars updated by branches
  SourceSpan span;

  bool has_state(const std::string& s) const;
};

// Recomputes MachineDef::writes from the branch updates (sorted, unique).
std::vector<std::string> derive_writes(const MachineDef& machine);

struct Network {
  std::vector<EnumDomain> domains;
  std::vector<SharedVar> shared_vars;
  std::vector<ConstantDef> constants;
  std::vector<MachineDef> machines;  // declaration order = per-tick update order
  std::string tick_horizon;          // name of the count constant (e.g. N_ticks)

  const EnumDomain* domain(const std::string& name) const;
  const SharedVar* shared_var(const std::string& name) const;
  const ConstantDef* constant(const std::string& name) const;
  const MachineDef* machine(const std::string& name) const;
};

struct ScenarioConfig {
  std::string name;
  // Sorted by constant name; parse_config and scenario_table keep it that way.
  std::vector<std::pair<std::string, Rational>> bindings;

  const Rational* binding(const std::string& name) const;
};

// A network plus a complete constant binding.  Produced by bind_constants;
// immutable afterwards, so analyses may share it across threads.
struct ConcreteNetwork {
  Network net;
  Bindings bindings;        // every constant resolved (config overrides inline)
  int horizon = 0;          // resolved value of net.tick_horizon
  std::string config_name;  // provenance for reports
};

// Resolves every constant of `net` against `config` (config bindings win over
// inline constant values).  Checks that probability constants lie in [0,1],
// count constants are non-negative integers, every branch weight evaluates
// into [0,1] and every transition's branch weights sum to 1 (exact rational
// where representable, tolerance 1e-9 otherwise).  Throws Error with kinds
// unbound_constant, out_of_range, weight_sum, division_by_zero.
ConcreteNetwork bind_constants(const Network& net, const ScenarioConfig& config);

// One configuration of the composed system: a local state per machine, a
// value per shared variable, and the built-in tick counter.
struct GlobalState {
  std::vector<int> locals;     // per machine, index into MachineDef::states
  std::vector<int> valuation;  // per shared var, index into its domain values
  int ticks = 0;
  bool done = false;  // ticks reached the horizon; state is absorbing
};

// Structural equality modulo declaration order: domains / shared vars /
// constants are matched by name, machine order is semantic and must agree,
// states and transitions within a machine may be permuted, expression trees
// must match node for node.  Derived fields (writes) are ignored.
bool structurally_equal(const Network& a, const Network& b);

}  // namespace tickmc

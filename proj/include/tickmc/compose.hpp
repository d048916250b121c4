// Composition of a concrete network into an explicit sparse DTMC.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tickmc/model.hpp"
#include "tickmc/resolve.hpp"

namespace tickmc {

struct ComposeOptions {
  // Hard bound on reachable states; exceeding it raises
  // Error{state_cap_exceeded}.
  std::uint64_t state_cap = 10'000'000;
};

// Explicit DTMC in compressed-sparse-row form.  States are discovered by
// breadth-first exploration from the initial state, so indexing is
// deterministic for a given input.  Every row sums to 1 within 1e-9: states
// at the tick horizon carry an explicit self-loop.
struct SparseDtmc {
  // State metadata (copied from the resolved network) for rendering and
  // predicate resolution.
  std::vector<std::string> machine_names;
  std::vector<std::vector<std::string>> machine_state_names;
  std::vector<std::string> var_names;
  std::vector<std::vector<std::string>> var_value_names;
  int horizon = 0;

  std::uint32_t initial = 0;

  // Packed per-state data: machine locals, then variable values, then ticks.
  std::vector<std::int32_t> state_blob;

  std::vector<std::uint64_t> row_offsets;  // state_count() + 1 entries
  std::vector<std::uint32_t> cols;         // ascending within each row
  std::vector<double> probs;

  // Label name ("var=value" or "deadlock") -> ascending state indices.
  std::map<std::string, std::vector<std::uint32_t>> labels;

  std::vector<std::string> warnings;  // e.g. probability underflow notes

  std::uint32_t state_count() const {
    return row_offsets.empty() ? 0 : static_cast<std::uint32_t>(row_offsets.size() - 1);
  }
  std::size_t stride() const { return machine_names.size() + var_names.size() + 1; }

  int local_of(std::uint32_t state, int machine) const;
  int value_of(std::uint32_t state, int var) const;
  int ticks_of(std::uint32_t state) const;
  bool done_of(std::uint32_t state) const { return ticks_of(state) == horizon; }

  GlobalState state(std::uint32_t index) const;

  std::span<const std::uint32_t> row_cols(std::uint32_t state) const;
  std::span<const double> row_probs(std::uint32_t state) const;

  // Human-readable "Machine=State ..." / "var=value ..." annotation.
  std::string describe(std::uint32_t state) const;
};

// Builds the reachable composed chain of `cnet`.  Macro-step semantics are
// described in model.hpp.  Labels are generated for every var=value pair and
// for "deadlock" (states without outgoing transitions — impossible for
// composed chains, where idling and the horizon self-loop totalize every row,
// but the label is kept so deadlock-freedom queries stay expressible).
// Throws Error{state_cap_exceeded} when the cap is hit and
// Error{division_by_zero} when a weight expression fails to evaluate.
SparseDtmc compose(const ConcreteNetwork& cnet, const ComposeOptions& options = {});

// Removes all outgoing transitions of one state, rebuilding the CSR arrays
// and the "deadlock" label.  Fault injection for exercising deadlock
// reporting; composed chains never produce such states on their own.
void drop_outgoing(SparseDtmc& dtmc, std::uint32_t state);

// Graphviz rendering: one node per state annotated with machine states,
// valuation and ticks; edges labelled with probabilities (6 decimal digits).
std::string to_dot(const SparseDtmc& dtmc);

// JSON state-space dump: {"states": [{index, machineStates, valuation,
// ticks}...], "edges": [{from, to, p}...]}.
std::string state_space_json(const SparseDtmc& dtmc);

}  // namespace tickmc

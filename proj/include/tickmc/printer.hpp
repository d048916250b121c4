// Canonical pretty-printer for networks and configurations.
#pragma once

#include <string>
#include <vector>

#include "tickmc/model.hpp"

namespace tickmc {

// Canonical model text: domains, constants and shared variables sorted by
// name; machines kept in declaration order (it is the per-tick update order);
// states sorted by name within a machine; transitions sorted by (source,
// guard text); updates sorted by variable.  parse_model of the output is
// structurally equal to the input, and printing is idempotent.
std::string pretty_print(const Network& net);

// Canonical .pcfg text for a list of configurations (file order preserved,
// bindings sorted by constant name).
std::string pretty_print(const std::vector<ScenarioConfig>& configs);

}  // namespace tickmc

// Export of a composed chain in the PRISM model checker's input language.
#pragma once

#include <string>

#include "tickmc/compose.hpp"

namespace tickmc {

// Emits a `dtmc` model with one bounded integer variable per machine, per
// shared variable and for the tick counter, one guarded command per reachable
// global state, labels for every var=value pair, and a comment documenting
// reliance on the external tool's built-in deadlock handling for the
// "deadlock" label.
std::string export_prism(const SparseDtmc& dtmc);

}  // namespace tickmc

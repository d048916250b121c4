// Static validation of a network prior to binding and composition.
#pragma once

#include "tickmc/diagnostics.hpp"
#include "tickmc/model.hpp"

namespace tickmc {

// Checks, without needing constant bindings:
//   - name uniqueness (domains, values, shared vars, constants, machines,
//     states) and resolvability of every reference,
//   - initial states and initial values exist in their domains,
//   - the tick horizon names a count constant; `ticks` is reserved,
//   - each shared variable has exactly one writing machine (single writer),
//   - updates assign values from the target variable's domain, at most once
//     per variable per branch,
//   - guards of the transitions leaving one state are mutually exclusive,
//     checked exhaustively over the finite shared-variable valuation space,
//   - weight expressions reference declared constants; transitions whose
//     weights are all literal must sum to 1 (constant-bearing sums are
//     re-checked by bind_constants once a binding is known),
//   - inline probability constant values lie in [0, 1], counts are
//     non-negative integers.
// Diagnostics name the offending machine / state / transition.
DiagnosticBag validate_network(const Network& net);

}  // namespace tickmc

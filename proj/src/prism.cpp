#include "tickmc/prism.hpp"

#include <sstream>

#include "tickmc/numfmt.hpp"

namespace tickmc {

namespace {

// PRISM identifiers: the machine local-state variables are prefixed with
// loc_, shared variables keep their names, the tick counter is `ticks`.
std::string loc_var(const std::string& machine) { return "loc_" + machine; }

}  // namespace

std::string export_prism(const SparseDtmc& dtmc) {
  std::ostringstream out;
  out << "dtmc\n\n";

  // Value legends: every variable is a bounded integer indexing into the
  // name tables below.
  for (std::size_t m = 0; m < dtmc.machine_names.size(); ++m) {
    out << "// " << loc_var(dtmc.machine_names[m]) << ":";
    for (std::size_t s = 0; s < dtmc.machine_state_names[m].size(); ++s) {
      out << " " << s << "=" << dtmc.machine_state_names[m][s];
    }
    out << "\n";
  }
  for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
    out << "// " << dtmc.var_names[v] << ":";
    for (std::size_t w = 0; w < dtmc.var_value_names[v].size(); ++w) {
      out << " " << w << "=" << dtmc.var_value_names[v][w];
    }
    out << "\n";
  }
  out << "\n";

  out << "module network\n";
  for (std::size_t m = 0; m < dtmc.machine_names.size(); ++m) {
    out << "  " << loc_var(dtmc.machine_names[m]) << " : [0.."
        << dtmc.machine_state_names[m].size() - 1
        << "] init " << dtmc.local_of(dtmc.initial, static_cast<int>(m)) << ";\n";
  }
  for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
    out << "  " << dtmc.var_names[v] << " : [0.." << dtmc.var_value_names[v].size() - 1
        << "] init " << dtmc.value_of(dtmc.initial, static_cast<int>(v)) << ";\n";
  }
  out << "  ticks : [0.." << dtmc.horizon << "] init 0;\n\n";

  // One guarded command per reachable global state.
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    out << "  [] ";
    for (std::size_t m = 0; m < dtmc.machine_names.size(); ++m) {
      if (m) out << " & ";
      out << loc_var(dtmc.machine_names[m]) << "=" << dtmc.local_of(s, static_cast<int>(m));
    }
    for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
      out << " & " << dtmc.var_names[v] << "=" << dtmc.value_of(s, static_cast<int>(v));
    }
    out << " & ticks=" << dtmc.ticks_of(s) << " ->";

    auto rc = dtmc.row_cols(s);
    auto rp = dtmc.row_probs(s);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      if (k) out << " +";
      out << " " << format_shortest(rp[k]) << " : ";
      const std::uint32_t target = rc[k];
      bool any = false;
      for (std::size_t m = 0; m < dtmc.machine_names.size(); ++m) {
        const int from = dtmc.local_of(s, static_cast<int>(m));
        const int to = dtmc.local_of(target, static_cast<int>(m));
        if (from == to) continue;
        if (any) out << " & ";
        out << "(" << loc_var(dtmc.machine_names[m]) << "'=" << to << ")";
        any = true;
      }
      for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
        const int from = dtmc.value_of(s, static_cast<int>(v));
        const int to = dtmc.value_of(target, static_cast<int>(v));
        if (from == to) continue;
        if (any) out << " & ";
        out << "(" << dtmc.var_names[v] << "'=" << to << ")";
        any = true;
      }
      if (dtmc.ticks_of(target) != dtmc.ticks_of(s)) {
        if (any) out << " & ";
        out << "(ticks'=" << dtmc.ticks_of(target) << ")";
        any = true;
      }
      if (!any) out << "true";
    }
    out << ";\n";
  }
  out << "endmodule\n\n";

  // var=value labels (PRISM label names cannot contain '=').
  for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
    for (std::size_t w = 0; w < dtmc.var_value_names[v].size(); ++w) {
      out << "label \"" << dtmc.var_names[v] << "_" << dtmc.var_value_names[v][w] << "\" = "
          << dtmc.var_names[v] << "=" << w << ";\n";
    }
  }
  out << "\n";
  out << "// The \"deadlock\" label is built into the external checker; it marks\n";
  out << "// states without outgoing transitions.  Composed chains are fully\n";
  out << "// totalized (idling plus the horizon self-loop), so the label is empty\n";
  out << "// unless transitions were removed by fault injection.\n";
  return out.str();
}

}  // namespace tickmc

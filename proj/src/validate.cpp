#include "tickmc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tickmc/error.hpp"

namespace tickmc {

namespace {

constexpr std::uint64_t kExclusivityCap = 1u << 20;

void check_unique_names(const Network& net, DiagnosticBag& bag) {
  std::set<std::string> seen;
  for (const auto& d : net.domains) {
    if (!seen.insert(d.name).second) bag.error("duplicate domain '" + d.name + "'", d.span);
    std::set<std::string> values;
    for (const auto& v : d.values) {
      if (!values.insert(v).second) {
        bag.error("duplicate value '" + v + "' in domain '" + d.name + "'", d.span);
      }
    }
    if (d.values.empty()) bag.error("domain '" + d.name + "' has no values", d.span);
  }
  seen.clear();
  for (const auto& v : net.shared_vars) {
    if (!seen.insert(v.name).second) {
      bag.error("duplicate shared variable '" + v.name + "'", v.span);
    }
    if (v.name == "ticks") {
      bag.error("'ticks' is reserved for the built-in tick counter", v.span);
    }
  }
  seen.clear();
  for (const auto& c : net.constants) {
    if (!seen.insert(c.name).second) bag.error("duplicate constant '" + c.name + "'", c.span);
    if (c.name == "ticks") {
      bag.error("'ticks' is reserved for the built-in tick counter", c.span);
    }
  }
  seen.clear();
  for (const auto& m : net.machines) {
    if (!seen.insert(m.name).second) bag.error("duplicate machine '" + m.name + "'", m.span);
    std::set<std::string> states;
    for (const auto& s : m.states) {
      if (!states.insert(s).second) {
        bag.error("duplicate state '" + s + "' in machine '" + m.name + "'", m.span);
      }
    }
  }
}

void check_shared_vars(const Network& net, DiagnosticBag& bag) {
  for (const auto& v : net.shared_vars) {
    const EnumDomain* d = net.domain(v.domain);
    if (!d) {
      bag.error("shared variable '" + v.name + "' references unknown domain '" + v.domain + "'",
                v.span);
      continue;
    }
    if (d->index_of(v.initial) < 0) {
      bag.error("initial value '" + v.initial + "' of shared variable '" + v.name +
                    "' is not a value of domain '" + v.domain + "'",
                v.span);
    }
  }
}

void check_horizon(const Network& net, DiagnosticBag& bag) {
  if (net.tick_horizon.empty()) {
    bag.error("network declares no tick horizon (expected 'horizon <count-constant>;')");
    return;
  }
  const ConstantDef* c = net.constant(net.tick_horizon);
  if (!c) {
    bag.error("tick horizon '" + net.tick_horizon + "' is not a declared constant");
    return;
  }
  if (c->kind != ConstKind::count) {
    bag.error("tick horizon '" + net.tick_horizon + "' must be a count constant", c->span);
  }
}

void check_constant_values(const Network& net, DiagnosticBag& bag) {
  for (const auto& c : net.constants) {
    if (!c.value) continue;
    if (c.kind == ConstKind::probability &&
        (c.value->num < 0 || r_less(Rational{1, 1}, *c.value))) {
      bag.error("probability constant '" + c.name + "' has inline value " +
                    c.value->to_decimal_string() + " outside [0, 1]",
                c.span);
    }
    if (c.kind == ConstKind::count && (!c.value->is_integer() || c.value->num < 0)) {
      bag.error("count constant '" + c.name + "' has inline value " +
                    c.value->to_decimal_string() + ", expected a non-negative integer",
                c.span);
    }
  }
}

void check_single_writer(const Network& net, DiagnosticBag& bag) {
  std::map<std::string, std::string> writer;  // var -> machine
  for (const auto& m : net.machines) {
    for (const auto& var : derive_writes(m)) {
      auto [it, inserted] = writer.emplace(var, m.name);
      if (!inserted && it->second != m.name) {
        bag.error("shared variable '" + var + "' is written by both machine '" + it->second +
                      "' and machine '" + m.name + "' (single-writer rule)",
                  m.span);
      }
    }
  }
}

void check_machine_structure(const Network& net, const MachineDef& m, DiagnosticBag& bag) {
  if (m.states.empty()) {
    bag.error("machine '" + m.name + "' declares no states", m.span);
    return;
  }
  if (!m.has_state(m.initial)) {
    bag.error("initial state '" + m.initial + "' is not a state of machine '" + m.name + "'",
              m.span);
  }
  for (const auto& t : m.transitions) {
    std::string where = "machine '" + m.name + "', transition from '" + t.source + "'";
    if (!m.has_state(t.source)) {
      bag.error("transition source '" + t.source + "' is not a state of machine '" + m.name +
                    "'",
                t.span);
    }
    if (t.branches.empty()) {
      bag.error(where + " has no branches", t.span);
    }
    for (const auto& b : t.branches) {
      if (!m.has_state(b.target)) {
        bag.error("branch target '" + b.target + "' is not a state of machine '" + m.name +
                      "' (" + where + ")",
                  b.span);
      }
      std::set<std::string> updated;
      for (const auto& u : b.updates) {
        if (!updated.insert(u.var).second) {
          bag.error("branch updates variable '" + u.var + "' twice (" + where + ")", u.span);
        }
        const SharedVar* v = net.shared_var(u.var);
        if (!v) {
          bag.error("update references unknown shared variable '" + u.var + "' (" + where +
                        ")",
                    u.span);
          continue;
        }
        const EnumDomain* d = net.domain(v->domain);
        if (d && d->index_of(u.value) < 0) {
          bag.error("update assigns '" + u.value + "', not a value of domain '" + v->domain +
                        "', to '" + u.var + "' (" + where + ")",
                    u.span);
        }
      }
      std::set<std::string> consts;
      collect_constants(*b.weight, consts);
      for (const auto& c : consts) {
        if (!net.constant(c)) {
          bag.error("weight expression references unknown constant '" + c + "' (" + where +
                        ")",
                    b.span);
        }
      }
    }
    std::set<std::pair<std::string, std::string>> atoms;
    collect_atoms(*t.guard, atoms);
    for (const auto& [var, value] : atoms) {
      const SharedVar* v = net.shared_var(var);
      if (!v) {
        bag.error("guard references unknown shared variable '" + var + "' (" + where + ")",
                  t.span);
        continue;
      }
      const EnumDomain* d = net.domain(v->domain);
      if (d && d->index_of(value) < 0) {
        bag.error("guard compares '" + var + "' with '" + value +
                      "', not a value of domain '" + v->domain + "' (" + where + ")",
                  t.span);
      }
    }
  }
}

// Transitions with every weight a literal can be summed without bindings;
// anything else is deferred to bind_constants.
void check_literal_weight_sums(const MachineDef& m, DiagnosticBag& bag) {
  for (const auto& t : m.transitions) {
    bool all_literal = true;
    Rational sum{0, 1};
    bool exact_ok = true;
    double dsum = 0.0;
    for (const auto& b : t.branches) {
      std::set<std::string> consts;
      collect_constants(*b.weight, consts);
      if (!consts.empty()) {
        all_literal = false;
        break;
      }
      Bindings empty;
      try {
        dsum += evaluate(*b.weight, empty);
        if (exact_ok) {
          auto e = evaluate_exact(*b.weight, empty);
          if (e) {
            auto next = r_add(sum, *e);
            exact_ok = next.has_value();
            if (next) sum = *next;
          } else {
            exact_ok = false;
          }
        }
      } catch (const Error&) {
        bag.error("weight expression fails to evaluate (machine '" + m.name +
                      "', transition from '" + t.source + "')",
                  b.span);
        all_literal = false;
        break;
      }
    }
    if (!all_literal || t.branches.empty()) continue;
    bool bad = exact_ok ? !(sum == Rational{1, 1}) : std::fabs(dsum - 1.0) > 1e-9;
    if (bad) {
      std::string total = exact_ok ? sum.to_decimal_string() : std::to_string(dsum);
      bag.error("branch weights sum to " + total + ", expected 1 (machine '" + m.name +
                    "', transition from '" + t.source + "')",
                t.span);
    }
  }
}

std::string describe_valuation(const Valuation& v) {
  std::string out;
  for (const auto& [var, value] : v) {
    if (!out.empty()) out += ", ";
    out += var + "=" + value;
  }
  return out;
}

// Exhaustive mutual-exclusivity check over the shared-variable valuation
// space.  The space is the product of the domain sizes; for realistic
// networks (tens of values) this is tiny.
void check_guard_exclusivity(const Network& net, DiagnosticBag& bag) {
  std::vector<const SharedVar*> vars;
  std::uint64_t space = 1;
  for (const auto& v : net.shared_vars) {
    const EnumDomain* d = net.domain(v.domain);
    if (!d || d->values.empty()) return;  // structural errors already reported
    vars.push_back(&v);
    space *= d->values.size();
    if (space > kExclusivityCap) {
      bag.warning("shared-variable valuation space exceeds " +
                  std::to_string(kExclusivityCap) +
                  " states; guard exclusivity not checked exhaustively");
      return;
    }
  }

  for (const auto& m : net.machines) {
    // Group transitions by source state.
    std::map<std::string, std::vector<const Transition*>> by_source;
    for (const auto& t : m.transitions) by_source[t.source].push_back(&t);
    for (const auto& [source, transitions] : by_source) {
      if (transitions.size() < 2) continue;
      // Odometer over the valuation space.
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        Valuation valuation;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          valuation[vars[i]->name] = net.domain(vars[i]->domain)->values[idx[i]];
        }
        const Transition* first = nullptr;
        for (const Transition* t : transitions) {
          bool sat = false;
          try {
            sat = evaluate(*t->guard, valuation);
          } catch (const Error&) {
            sat = false;  // unresolved references reported structurally
          }
          if (!sat) continue;
          if (first) {
            bag.error("guards of machine '" + m.name + "', state '" + source +
                          "' overlap under valuation {" + describe_valuation(valuation) +
                          "}",
                      t->span);
            return;  // one witness per network keeps the report readable
          }
          first = t;
        }
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < net.domain(vars[k]->domain)->values.size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
    }
  }
}

}  // namespace

DiagnosticBag validate_network(const Network& net) {
  DiagnosticBag bag;
  check_unique_names(net, bag);
  check_shared_vars(net, bag);
  check_horizon(net, bag);
  check_constant_values(net, bag);
  check_single_writer(net, bag);
  for (const auto& m : net.machines) {
    check_machine_structure(net, m, bag);
    check_literal_weight_sums(m, bag);
  }
  if (!bag.has_errors()) check_guard_exclusivity(net, bag);
  return bag;
}

}  // namespace tickmc

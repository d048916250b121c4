#include "tickmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tickmc/error.hpp"

namespace tickmc {

int EnumDomain::index_of(const std::string& value) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<int>(i);
  }
  return -1;
}

bool MachineDef::has_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}

std::vector<std::string> derive_writes(const MachineDef& machine) {
  std::set<std::string> vars;
  for (const auto& t : machine.transitions) {
    for (const auto& b : t.branches) {
      for (const auto& u : b.updates) vars.insert(u.var);
    }
  }
  return {vars.begin(), vars.end()};
}

const EnumDomain* Network::domain(const std::string& name) const {
  for (const auto& d : domains)
    if (d.name == name) return &d;
  return nullptr;
}

const SharedVar* Network::shared_var(const std::string& name) const {
  for (const auto& v : shared_vars)
    if (v.name == name) return &v;
  return nullptr;
}

const ConstantDef* Network::constant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

const MachineDef* Network::machine(const std::string& name) const {
  for (const auto& m : machines)
    if (m.name == name) return &m;
  return nullptr;
}

const Rational* ScenarioConfig::binding(const std::string& name) const {
  for (const auto& [n, v] : bindings)
    if (n == name) return &v;
  return nullptr;
}

namespace {

bool in_unit_interval(const Rational& r) {
  return r.num >= 0 && !r_less(Rational{1, 1}, r);
}

// Checks one transition's branch weights under complete bindings: each weight
// in [0, 1], total equal to 1 (exact rational when representable, 1e-9 in
// doubles otherwise).
void check_transition_weights(const Transition& t, const std::string& machine,
                              const Bindings& bindings) {
  Rational exact_sum{0, 1};
  bool exact_ok = true;
  double sum = 0.0;
  double compensation = 0.0;
  for (const auto& b : t.branches) {
    double w;
    try {
      w = evaluate(*b.weight, bindings);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::unknown_identifier) {
        throw Error(ErrorKind::unbound_constant,
                    std::string(e.what()) + " (machine '" + machine +
                        "', transition from '" + t.source + "')");
      }
      throw;
    }
    if (w < 0.0 || w > 1.0) {
      throw Error(ErrorKind::out_of_range,
                  "branch weight " + std::to_string(w) + " outside [0, 1] in machine '" +
                      machine + "', transition from '" + t.source + "'");
    }
    // Kahan-compensated accumulation for the double track.
    double y = w - compensation;
    double s = sum + y;
    compensation = (s - sum) - y;
    sum = s;
    if (exact_ok) {
      auto e = evaluate_exact(*b.weight, bindings);
      if (e) {
        auto next = r_add(exact_sum, *e);
        if (next) {
          exact_sum = *next;
        } else {
          exact_ok = false;
        }
      } else {
        exact_ok = false;
      }
    }
  }
  bool bad = exact_ok ? !(exact_sum == Rational{1, 1}) : std::fabs(sum - 1.0) > 1e-9;
  if (bad) {
    std::string total = exact_ok ? exact_sum.to_decimal_string() : std::to_string(sum);
    throw Error(ErrorKind::weight_sum, "branch weights sum to " + total +
                                           ", expected 1, in machine '" + machine +
                                           "', transition from '" + t.source + "'");
  }
}

}  // namespace

ConcreteNetwork bind_constants(const Network& net, const ScenarioConfig& config) {
  ConcreteNetwork out;
  out.net = net;
  out.config_name = config.name;

  for (const auto& c : net.constants) {
    const Rational* bound = config.binding(c.name);
    std::optional<Rational> value = bound ? std::optional<Rational>(*bound) : c.value;
    if (!value) {
      throw Error(ErrorKind::unbound_constant,
                  "constant '" + c.name + "' is not bound by config '" + config.name + "'");
    }
    if (c.kind == ConstKind::probability && !in_unit_interval(*value)) {
      throw Error(ErrorKind::out_of_range,
                  "probability constant '" + c.name + "' bound to " +
                      value->to_decimal_string() + ", outside [0, 1]");
    }
    if (c.kind == ConstKind::count && (!value->is_integer() || value->num < 0)) {
      throw Error(ErrorKind::out_of_range,
                  "count constant '" + c.name + "' bound to " + value->to_decimal_string() +
                      ", expected a non-negative integer");
    }
    out.bindings[c.name] = *value;
  }
  for (const auto& [name, value] : config.bindings) {
    if (!net.constant(name)) {
      throw Error(ErrorKind::unknown_identifier,
                  "config '" + config.name + "' binds unknown constant '" + name + "'");
    }
    (void)value;
  }

  const ConstantDef* horizon = net.constant(net.tick_horizon);
  if (!horizon) {
    throw Error(ErrorKind::invalid_model,
                "tick horizon '" + net.tick_horizon + "' is not a declared constant");
  }
  out.horizon = static_cast<int>(out.bindings.at(net.tick_horizon).num);

  for (const auto& m : net.machines) {
    for (const auto& t : m.transitions) check_transition_weights(t, m.name, out.bindings);
  }
  return out;
}

namespace {

std::string guard_key(const GuardExpr& g) { return to_string(g); }

// Canonical transition order: by source state, then guard text, then branch
// signature.  Unique for validated machines (guards from one state are
// mutually exclusive, hence textually distinct).
std::string transition_key(const Transition& t) {
  std::string key = t.source + "\x1f" + guard_key(*t.guard) + "\x1f";
  for (const auto& b : t.branches) {
    key += b.target + "[" + to_string(*b.weight) + "]";
    for (const auto& u : b.updates) key += u.var + ":=" + u.value + ",";
    key += ";";
  }
  return key;
}

bool updates_equal(std::vector<Update> a, std::vector<Update> b) {
  auto by_var = [](const Update& x, const Update& y) { return x.var < y.var; };
  std::sort(a.begin(), a.end(), by_var);
  std::sort(b.begin(), b.end(), by_var);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].var != b[i].var || a[i].value != b[i].value) return false;
  }
  return true;
}

bool transitions_equal(const Transition& a, const Transition& b) {
  if (a.source != b.source) return false;
  if (!structurally_equal(*a.guard, *b.guard)) return false;
  if (a.branches.size() != b.branches.size()) return false;
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    const Branch& x = a.branches[i];
    const Branch& y = b.branches[i];
    if (x.target != y.target) return false;
    if (!structurally_equal(*x.weight, *y.weight)) return false;
    if (!updates_equal(x.updates, y.updates)) return false;
  }
  return true;
}

bool machines_equal(const MachineDef& a, const MachineDef& b) {
  if (a.name != b.name || a.initial != b.initial) return false;
  std::vector<std::string> sa = a.states, sb = b.states;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  if (a.transitions.size() != b.transitions.size()) return false;
  auto order = [](const Transition& x, const Transition& y) {
    return transition_key(x) < transition_key(y);
  };
  std::vector<Transition> ta = a.transitions, tb = b.transitions;
  std::sort(ta.begin(), ta.end(), order);
  std::sort(tb.begin(), tb.end(), order);
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!transitions_equal(ta[i], tb[i])) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const Network& a, const Network& b) {
  if (a.tick_horizon != b.tick_horizon) return false;

  if (a.domains.size() != b.domains.size()) return false;
  for (const auto& d : a.domains) {
    const EnumDomain* other = b.domain(d.name);
    if (!other || other->values != d.values) return false;
  }

  if (a.shared_vars.size() != b.shared_vars.size()) return false;
  for (const auto& v : a.shared_vars) {
    const SharedVar* other = b.shared_var(v.name);
    if (!other || other->domain != v.domain || other->initial != v.initial) return false;
  }

  if (a.constants.size() != b.constants.size()) return false;
  for (const auto& c : a.constants) {
    const ConstantDef* other = b.constant(c.name);
    if (!other || other->kind != c.kind) return false;
    if (c.value.has_value() != other->value.has_value()) return false;
    if (c.value && !(*c.value == *other->value)) return false;
  }

  if (a.machines.size() != b.machines.size()) return false;
  for (std::size_t i = 0; i < a.machines.size(); ++i) {
    if (!machines_equal(a.machines[i], b.machines[i])) return false;
  }
  return true;
}

}  // namespace tickmc

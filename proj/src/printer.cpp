#include "tickmc/printer.hpp"

#include <algorithm>
#include <sstream>

namespace tickmc {

namespace {

const char* kind_name(ConstKind kind) {
  switch (kind) {
    case ConstKind::probability: return "probability";
    case ConstKind::count: return "count";
    case ConstKind::ratio: return "ratio";
  }
  return "probability";
}

template <typename T, typename Key>
std::vector<const T*> sorted_by(const std::vector<T>& items, Key key) {
  std::vector<const T*> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(&item);
  std::sort(out.begin(), out.end(),
            [&](const T* a, const T* b) { return key(*a) < key(*b); });
  return out;
}

void print_transition(std::ostringstream& out, const Transition& t) {
  out << "  from " << t.source;
  if (t.guard && t.guard->op != GuardExpr::Op::truth) {
    out << " when " << to_string(*t.guard);
  }
  out << " goto";
  bool first_branch = true;
  for (const auto& b : t.branches) {
    if (!first_branch) out << " or";
    first_branch = false;
    out << " [" << to_string(*b.weight) << "] " << b.target;
    auto updates = sorted_by(b.updates, [](const Update& u) { return u.var; });
    bool first_update = true;
    for (const Update* u : updates) {
      out << (first_update ? " set " : ", ") << u->var << " := " << u->value;
      first_update = false;
    }
  }
  out << ";\n";
}

}  // namespace

std::string pretty_print(const Network& net) {
  std::ostringstream out;

  for (const EnumDomain* d : sorted_by(net.domains, [](const EnumDomain& x) { return x.name; })) {
    out << "domain " << d->name << " { ";
    for (std::size_t i = 0; i < d->values.size(); ++i) {
      if (i) out << ", ";
      out << d->values[i];
    }
    out << " }\n";
  }
  if (!net.domains.empty()) out << "\n";

  for (const ConstantDef* c :
       sorted_by(net.constants, [](const ConstantDef& x) { return x.name; })) {
    out << "const " << c->name << " : " << kind_name(c->kind);
    if (c->value) out << " = " << c->value->to_decimal_string();
    out << ";\n";
  }
  if (!net.constants.empty()) out << "\n";

  for (const SharedVar* v :
       sorted_by(net.shared_vars, [](const SharedVar& x) { return x.name; })) {
    out << "var " << v->name << " : " << v->domain << " = " << v->initial << ";\n";
  }
  if (!net.shared_vars.empty()) out << "\n";

  if (!net.tick_horizon.empty()) out << "horizon " << net.tick_horizon << ";\n\n";

  bool first_machine = true;
  for (const auto& m : net.machines) {
    if (!first_machine) out << "\n";
    first_machine = false;
    out << "machine " << m.name << " {\n";
    out << "  initial " << m.initial << ";\n";
    std::vector<std::string> states = m.states;
    std::sort(states.begin(), states.end());
    out << "  state ";
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (i) out << ", ";
      out << states[i];
    }
    out << ";\n";
    auto transitions = sorted_by(m.transitions, [](const Transition& t) {
      return t.source + "\x01" + (t.guard ? to_string(*t.guard) : std::string());
    });
    for (const Transition* t : transitions) print_transition(out, *t);
    out << "}\n";
  }

  return out.str();
}

std::string pretty_print(const std::vector<ScenarioConfig>& configs) {
  std::ostringstream out;
  bool first = true;
  for (const auto& cfg : configs) {
    if (!first) out << "\n";
    first = false;
    out << "config " << cfg.name << " {\n";
    for (const auto& [name, value] : cfg.bindings) {
      out << "  " << name << " = " << value.to_decimal_string() << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace tickmc

#include "tickmc/resolve.hpp"

#include <algorithm>
#include <cassert>

#include "tickmc/error.hpp"

namespace tickmc {

bool ResolvedGuard::eval(std::span<const int> valuation) const {
  switch (op) {
    case Op::truth:
      return true;
    case Op::eq:
      return valuation[static_cast<std::size_t>(var)] == value;
    case Op::ne:
      return valuation[static_cast<std::size_t>(var)] != value;
    case Op::conj:
      return lhs->eval(valuation) && rhs->eval(valuation);
    case Op::disj:
      return lhs->eval(valuation) || rhs->eval(valuation);
    case Op::neg:
      return !lhs->eval(valuation);
  }
  return false;
}

const ResolvedTransition* ResolvedNetwork::enabled(int m, int s,
                                                   std::span<const int> valuation) const {
  const ResolvedTransition* found = nullptr;
  for (const auto& t : machines[static_cast<std::size_t>(m)].from[static_cast<std::size_t>(s)]) {
    if (t.guard->eval(valuation)) {
      assert(found == nullptr && "guards must be mutually exclusive");
      found = &t;
#ifdef NDEBUG
      break;
#endif
    }
  }
  return found;
}

int ResolvedNetwork::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < var_names.size(); ++i) {
    if (var_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int ResolvedNetwork::value_index(int var, const std::string& name) const {
  if (var < 0) return -1;
  const auto& values = value_names[static_cast<std::size_t>(var)];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

ResolvedGuard::Ptr lower_guard(const GuardExpr& g, const ResolvedNetwork& rnet,
                               const ConcreteNetwork& cnet) {
  auto node = std::make_shared<ResolvedGuard>();
  switch (g.op) {
    case GuardExpr::Op::truth:
      node->op = ResolvedGuard::Op::truth;
      break;
    case GuardExpr::Op::eq:
    case GuardExpr::Op::ne: {
      node->op = g.op == GuardExpr::Op::eq ? ResolvedGuard::Op::eq : ResolvedGuard::Op::ne;
      node->var = rnet.var_index(g.var);
      if (node->var < 0) {
        throw Error(ErrorKind::unknown_identifier,
                    "guard references unknown shared variable '" + g.var + "'");
      }
      node->value = rnet.value_index(node->var, g.value);
      if (node->value < 0) {
        throw Error(ErrorKind::unknown_identifier,
                    "guard references unknown value '" + g.value + "' of '" + g.var + "'");
      }
      break;
    }
    case GuardExpr::Op::neg:
      node->op = ResolvedGuard::Op::neg;
      node->lhs = lower_guard(*g.lhs, rnet, cnet);
      break;
    case GuardExpr::Op::conj:
    case GuardExpr::Op::disj:
      node->op = g.op == GuardExpr::Op::conj ? ResolvedGuard::Op::conj
                                             : ResolvedGuard::Op::disj;
      node->lhs = lower_guard(*g.lhs, rnet, cnet);
      node->rhs = lower_guard(*g.rhs, rnet, cnet);
      break;
  }
  return node;
}

}  // namespace

ResolvedNetwork resolve(const ConcreteNetwork& cnet) {
  const Network& net = cnet.net;
  ResolvedNetwork rnet;
  rnet.horizon = cnet.horizon;

  for (const auto& v : net.shared_vars) {
    const EnumDomain* d = net.domain(v.domain);
    if (!d) {
      throw Error(ErrorKind::invalid_model,
                  "shared variable '" + v.name + "' references unknown domain");
    }
    rnet.var_names.push_back(v.name);
    rnet.value_names.push_back(d->values);
    int init = d->index_of(v.initial);
    if (init < 0) {
      throw Error(ErrorKind::invalid_model,
                  "shared variable '" + v.name + "' has an initial value outside its domain");
    }
    rnet.initial_valuation.push_back(init);
  }

  for (const auto& m : net.machines) {
    ResolvedMachine rm;
    rm.name = m.name;
    rm.state_names = m.states;
    auto state_index = [&](const std::string& s) {
      for (std::size_t i = 0; i < m.states.size(); ++i) {
        if (m.states[i] == s) return static_cast<int>(i);
      }
      return -1;
    };
    rm.initial = state_index(m.initial);
    if (rm.initial < 0) {
      throw Error(ErrorKind::invalid_model,
                  "machine '" + m.name + "' has an initial state outside its state list");
    }
    rm.from.resize(m.states.size());

    // Canonical (guard text) order keeps successor enumeration deterministic
    // regardless of declaration order.
    std::vector<const Transition*> ordered;
    ordered.reserve(m.transitions.size());
    for (const auto& t : m.transitions) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const Transition* a, const Transition* b) {
      if (a->source != b->source) return a->source < b->source;
      return to_string(*a->guard) < to_string(*b->guard);
    });

    for (const Transition* t : ordered) {
      ResolvedTransition rt;
      rt.source = state_index(t->source);
      if (rt.source < 0) {
        throw Error(ErrorKind::invalid_model, "transition from unknown state '" + t->source +
                                                  "' in machine '" + m.name + "'");
      }
      rt.guard = lower_guard(*t->guard, rnet, cnet);
      for (const auto& b : t->branches) {
        ResolvedBranch rb;
        rb.weight = evaluate(*b.weight, cnet.bindings);
        if (rb.weight == 0.0) continue;  // zero-probability branches cannot fire
        rb.target = state_index(b.target);
        if (rb.target < 0) {
          throw Error(ErrorKind::invalid_model, "branch to unknown state '" + b.target +
                                                    "' in machine '" + m.name + "'");
        }
        for (const auto& u : b.updates) {
          ResolvedUpdate ru;
          ru.var = rnet.var_index(u.var);
          if (ru.var < 0) {
            throw Error(ErrorKind::unknown_identifier,
                        "update references unknown shared variable '" + u.var + "'");
          }
          ru.value = rnet.value_index(ru.var, u.value);
          if (ru.value < 0) {
            throw Error(ErrorKind::unknown_identifier, "update assigns unknown value '" +
                                                           u.value + "' to '" + u.var + "'");
          }
          rb.updates.push_back(ru);
        }
        rt.branches.push_back(std::move(rb));
      }
      if (!rt.branches.empty()) {
        rm.from[static_cast<std::size_t>(rt.source)].push_back(std::move(rt));
      }
    }
    rnet.machines.push_back(std::move(rm));
  }
  return rnet;
}

}  // namespace tickmc

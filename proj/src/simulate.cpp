#include "tickmc/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>

#include "tickmc/error.hpp"
#include "tickmc/threading.hpp"

namespace tickmc {

namespace {

// Derives the RNG stream of sample `index` from the base seed (SplitMix64
// finalizer).  Every sample owns an independent stream, so estimates do not
// depend on execution order or thread count.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Executes one macro-step in place.  Machines update in declaration order and
// see the valuation as already modified by their predecessors this tick.
void macro_step(const ResolvedNetwork& rnet, std::vector<int>& locals,
                std::vector<int>& vals, std::mt19937_64& eng) {
  for (std::size_t m = 0; m < rnet.machines.size(); ++m) {
    const ResolvedTransition* tr = rnet.enabled(static_cast<int>(m), locals[m], vals);
    if (tr == nullptr) continue;  // idle
    const ResolvedBranch* chosen = &tr->branches.back();
    if (tr->branches.size() > 1) {
      const double u = next_uniform(eng);
      double acc = 0.0;
      for (const ResolvedBranch& b : tr->branches) {
        acc += b.weight;
        if (u < acc) {
          chosen = &b;
          break;
        }
      }
    }
    locals[m] = chosen->target;
    for (const ResolvedUpdate& upd : chosen->updates) vals[upd.var] = upd.value;
  }
}

struct SimAtom {
  int var = -1;
  int value = -1;
  bool negated = false;
};

std::vector<SimAtom> resolve_sim_atoms(const ResolvedNetwork& rnet, const Query& query) {
  std::vector<SimAtom> atoms;
  for (const PredAtom& atom : query.predicate) {
    SimAtom r;
    r.var = rnet.var_index(atom.var);
    if (r.var < 0) {
      throw Error(ErrorKind::unknown_identifier,
                  "predicate names unknown shared variable '" + atom.var + "'");
    }
    r.value = rnet.value_index(r.var, atom.value);
    if (r.value < 0) {
      throw Error(ErrorKind::unknown_identifier, "predicate names unknown value '" +
                                                     atom.value + "' for variable '" +
                                                     atom.var + "'");
    }
    r.negated = atom.negated;
    atoms.push_back(r);
  }
  return atoms;
}

bool atoms_hold(const std::vector<SimAtom>& atoms, const std::vector<int>& vals) {
  for (const SimAtom& atom : atoms) {
    if ((vals[atom.var] == atom.value) == atom.negated) return false;
  }
  return true;
}

}  // namespace

Trace simulate_run(const ResolvedNetwork& rnet, std::uint64_t seed) {
  Trace trace;
  trace.snapshots.reserve(rnet.horizon + 1);

  std::vector<int> locals(rnet.machines.size());
  for (std::size_t m = 0; m < rnet.machines.size(); ++m) locals[m] = rnet.machines[m].initial;
  std::vector<int> vals = rnet.initial_valuation;

  std::mt19937_64 eng(stream_seed(seed, 0));
  for (int tick = 0;; ++tick) {
    GlobalState g;
    g.locals = locals;
    g.valuation = vals;
    g.ticks = tick;
    g.done = tick == rnet.horizon;
    trace.snapshots.push_back(std::move(g));
    if (tick == rnet.horizon) break;
    macro_step(rnet, locals, vals, eng);
  }
  return trace;
}

Trace simulate_run(const ConcreteNetwork& cnet, std::uint64_t seed) {
  return simulate_run(resolve(cnet), seed);
}

Estimate estimate_probability(const ConcreteNetwork& cnet, const Query& query,
                              std::uint64_t samples, std::uint64_t seed, int threads) {
  if (query.kind == QueryKind::deadlock_freedom) {
    throw Error(ErrorKind::invalid_query,
                "deadlock-freedom properties are structural; they are checked exactly, "
                "not estimated");
  }
  if (samples == 0) {
    throw Error(ErrorKind::invalid_query, "sample count must be positive");
  }

  const ResolvedNetwork rnet = resolve(cnet);
  const auto atoms = resolve_sim_atoms(rnet, query);

  int decision_tick = rnet.horizon;
  if (query.tick_mode != TickMode::none) {
    if (!query.tick_value) {
      throw Error(ErrorKind::invalid_query,
                  "property '" + query.id +
                      "' leaves t symbolic; supply a tick value before simulating");
    }
    decision_tick = *query.tick_value;
    if (decision_tick < 0 || decision_tick > rnet.horizon) {
      throw Error(ErrorKind::invalid_query,
                  "tick value " + std::to_string(decision_tick) + " is outside 0.." +
                      std::to_string(rnet.horizon));
    }
  }

  std::vector<int> initial_locals(rnet.machines.size());
  for (std::size_t m = 0; m < rnet.machines.size(); ++m) {
    initial_locals[m] = rnet.machines[m].initial;
  }

  // Runs stop at the decision tick: later steps cannot change the outcome.
  std::atomic<std::uint64_t> successes{0};
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    std::vector<int> locals = initial_locals;
    std::vector<int> vals = rnet.initial_valuation;

    bool satisfied;
    if (query.tick_mode == TickMode::exact) {
      std::mt19937_64 eng(stream_seed(seed, i));
      for (int tick = 0; tick < decision_tick; ++tick) macro_step(rnet, locals, vals, eng);
      satisfied = atoms_hold(atoms, vals);
    } else {
      satisfied = atoms_hold(atoms, vals);  // tick 0
      if (!satisfied) {
        std::mt19937_64 eng(stream_seed(seed, i));
        for (int tick = 1; tick <= decision_tick && !satisfied; ++tick) {
          macro_step(rnet, locals, vals, eng);
          satisfied = atoms_hold(atoms, vals);
        }
      }
    }
    if (satisfied) successes.fetch_add(1, std::memory_order_relaxed);
  });

  Estimate est;
  est.property = query.id;
  est.config = cnet.config_name;
  est.t = query.tick_mode == TickMode::none ? std::optional<int>() : decision_tick;
  est.samples = samples;
  est.seed = seed;
  est.p_hat = static_cast<double>(successes.load()) / static_cast<double>(samples);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  return est;
}

}  // namespace tickmc

#include "tickmc/engine.hpp"

#include <algorithm>
#include <chrono>

#include "tickmc/error.hpp"
#include "tickmc/threading.hpp"

namespace tickmc {

const char* tick_mode_name(TickMode mode) {
  switch (mode) {
    case TickMode::none: return "none";
    case TickMode::exact: return "exact";
    case TickMode::cumulative: return "cumulative";
  }
  return "none";
}

namespace {

double clamp_probability(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

struct ResolvedAtom {
  int var = -1;
  int value = -1;
  bool negated = false;
};

std::vector<ResolvedAtom> resolve_atoms(const SparseDtmc& dtmc, const Query& query) {
  std::vector<ResolvedAtom> atoms;
  atoms.reserve(query.predicate.size());
  for (const PredAtom& atom : query.predicate) {
    ResolvedAtom r;
    r.negated = atom.negated;
    for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
      if (dtmc.var_names[v] == atom.var) {
        r.var = static_cast<int>(v);
        break;
      }
    }
    if (r.var < 0) {
      throw Error(ErrorKind::unknown_identifier,
                  "predicate names unknown shared variable '" + atom.var + "'");
    }
    const auto& values = dtmc.var_value_names[r.var];
    for (std::size_t w = 0; w < values.size(); ++w) {
      if (values[w] == atom.value) {
        r.value = static_cast<int>(w);
        break;
      }
    }
    if (r.value < 0) {
      throw Error(ErrorKind::unknown_identifier, "predicate names unknown value '" +
                                                     atom.value + "' for variable '" +
                                                     atom.var + "'");
    }
    atoms.push_back(r);
  }
  return atoms;
}

std::vector<char> mask_for(const SparseDtmc& dtmc, const std::vector<ResolvedAtom>& atoms,
                           TickMode mode, int t) {
  std::vector<char> mask(dtmc.state_count(), 0);
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    if (mode == TickMode::exact && dtmc.ticks_of(s) != t) continue;
    if (mode == TickMode::cumulative && dtmc.ticks_of(s) > t) continue;
    bool holds = true;
    for (const ResolvedAtom& atom : atoms) {
      const bool eq = dtmc.value_of(s, atom.var) == atom.value;
      if (eq == atom.negated) {
        holds = false;
        break;
      }
    }
    if (holds) mask[s] = 1;
  }
  return mask;
}

}  // namespace

std::vector<double> transient_distribution(const SparseDtmc& dtmc, int t) {
  std::vector<double> cur(dtmc.state_count(), 0.0);
  cur[dtmc.initial] = 1.0;
  std::vector<double> next(dtmc.state_count(), 0.0);
  for (int step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
      const double mass = cur[s];
      if (mass == 0.0) continue;
      auto rc = dtmc.row_cols(s);
      auto rp = dtmc.row_probs(s);
      for (std::size_t k = 0; k < rc.size(); ++k) next[rc[k]] += mass * rp[k];
    }
    cur.swap(next);
  }
  return cur;
}

double bounded_reachability(const SparseDtmc& dtmc, const std::vector<char>& target,
                            int horizon) {
  std::vector<double> cur(dtmc.state_count(), 0.0);
  cur[dtmc.initial] = 1.0;
  std::vector<double> next(dtmc.state_count(), 0.0);

  double reached = 0.0, comp = 0.0;
  auto absorb = [&] {
    for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
      if (target[s] && cur[s] != 0.0) {
        const double y = cur[s] - comp;
        const double t2 = reached + y;
        comp = (t2 - reached) - y;
        reached = t2;
        cur[s] = 0.0;
      }
    }
  };

  absorb();
  for (int step = 0; step < horizon; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    bool any = false;
    for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
      const double mass = cur[s];
      if (mass == 0.0) continue;
      any = true;
      auto rc = dtmc.row_cols(s);
      auto rp = dtmc.row_probs(s);
      for (std::size_t k = 0; k < rc.size(); ++k) next[rc[k]] += mass * rp[k];
    }
    if (!any) break;  // everything already absorbed
    cur.swap(next);
    absorb();
  }
  return clamp_probability(reached);
}

std::vector<std::uint32_t> find_deadlocks(const SparseDtmc& dtmc) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    if (dtmc.row_offsets[s + 1] == dtmc.row_offsets[s]) out.push_back(s);
  }
  return out;
}

std::vector<char> target_mask(const SparseDtmc& dtmc, const Query& query, int t) {
  return mask_for(dtmc, resolve_atoms(dtmc, query), query.tick_mode, t);
}

QueryResult eval_query(const SparseDtmc& dtmc, const Query& query,
                       const EngineOptions& options) {
  const auto start = std::chrono::steady_clock::now();

  QueryResult result;
  result.property = query.id;
  result.config = query.config;
  result.state_count = dtmc.state_count();

  if (query.kind == QueryKind::deadlock_freedom) {
    result.mode = "deadlock";
    result.deadlock_free = find_deadlocks(dtmc).empty();
  } else {
    result.mode = tick_mode_name(query.tick_mode);
    const auto atoms = resolve_atoms(dtmc, query);

    std::vector<int> ts;
    if (query.tick_mode == TickMode::none) {
      ts.push_back(dtmc.horizon);
    } else if (query.sweep) {
      for (int t = query.sweep->first; t <= query.sweep->second; ++t) ts.push_back(t);
    } else if (query.tick_value) {
      ts.push_back(*query.tick_value);
    } else {
      throw Error(ErrorKind::invalid_query,
                  "property '" + query.id +
                      "' leaves t symbolic; supply a tick value or sweep range");
    }
    for (int t : ts) {
      if (t < 0 || t > dtmc.horizon) {
        throw Error(ErrorKind::invalid_query,
                    "tick value " + std::to_string(t) + " is outside 0.." +
                        std::to_string(dtmc.horizon));
      }
    }

    result.points.resize(ts.size());
    parallel_for(ts.size(), options.threads, [&](std::size_t i) {
      const int t = ts[i];
      const int steps = query.tick_mode == TickMode::none ? dtmc.horizon : t;
      const auto mask = mask_for(dtmc, atoms, query.tick_mode, t);
      result.points[i] = {t, bounded_reachability(dtmc, mask, steps)};
    });
  }

  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace tickmc

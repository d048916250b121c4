#include "tickmc/compose.hpp"

#include <cstring>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tickmc/error.hpp"
#include "tickmc/numfmt.hpp"

namespace tickmc {

namespace {

// Depth-first enumeration of one macro-step: machines update in declaration
// order, each seeing the valuation as modified by its predecessors.  `emit`
// receives every leaf (locals, valuation, probability product).
template <typename Emit>
void walk_step(const ResolvedNetwork& rnet, std::size_t m, std::vector<int>& locals,
               std::vector<int>& vals, double p, Emit&& emit) {
  if (m == rnet.machines.size()) {
    emit(locals, vals, p);
    return;
  }
  const ResolvedTransition* tr = rnet.enabled(static_cast<int>(m), locals[m], vals);
  if (tr == nullptr) {  // machine idles this tick
    walk_step(rnet, m + 1, locals, vals, p, emit);
    return;
  }
  const int saved_local = locals[m];
  for (const ResolvedBranch& b : tr->branches) {
    locals[m] = b.target;
    // Apply updates, remembering previous values for backtracking.
    std::vector<std::pair<int, int>> saved;
    saved.reserve(b.updates.size());
    for (const ResolvedUpdate& u : b.updates) {
      saved.emplace_back(u.var, vals[u.var]);
      vals[u.var] = u.value;
    }
    walk_step(rnet, m + 1, locals, vals, p * b.weight, emit);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) vals[it->first] = it->second;
  }
  locals[m] = saved_local;
}

std::string pack_bytes(const std::int32_t* data, std::size_t stride) {
  return std::string(reinterpret_cast<const char*>(data), stride * sizeof(std::int32_t));
}

}  // namespace

int SparseDtmc::local_of(std::uint32_t state, int machine) const {
  return state_blob[state * stride() + machine];
}

int SparseDtmc::value_of(std::uint32_t state, int var) const {
  return state_blob[state * stride() + machine_names.size() + var];
}

int SparseDtmc::ticks_of(std::uint32_t state) const {
  return state_blob[state * stride() + machine_names.size() + var_names.size()];
}

GlobalState SparseDtmc::state(std::uint32_t index) const {
  GlobalState g;
  const std::size_t base = index * stride();
  g.locals.assign(state_blob.begin() + base,
                  state_blob.begin() + base + machine_names.size());
  g.valuation.assign(state_blob.begin() + base + machine_names.size(),
                     state_blob.begin() + base + machine_names.size() + var_names.size());
  g.ticks = state_blob[base + machine_names.size() + var_names.size()];
  g.done = g.ticks == horizon;
  return g;
}

std::span<const std::uint32_t> SparseDtmc::row_cols(std::uint32_t state) const {
  return {cols.data() + row_offsets[state],
          static_cast<std::size_t>(row_offsets[state + 1] - row_offsets[state])};
}

std::span<const double> SparseDtmc::row_probs(std::uint32_t state) const {
  return {probs.data() + row_offsets[state],
          static_cast<std::size_t>(row_offsets[state + 1] - row_offsets[state])};
}

std::string SparseDtmc::describe(std::uint32_t state) const {
  std::ostringstream out;
  for (std::size_t m = 0; m < machine_names.size(); ++m) {
    if (m) out << " ";
    out << machine_names[m] << "=" << machine_state_names[m][local_of(state, static_cast<int>(m))];
  }
  if (!var_names.empty()) out << " |";
  for (std::size_t v = 0; v < var_names.size(); ++v) {
    out << " " << var_names[v] << "=" << var_value_names[v][value_of(state, static_cast<int>(v))];
  }
  out << " | ticks=" << ticks_of(state);
  return out.str();
}

SparseDtmc compose(const ConcreteNetwork& cnet, const ComposeOptions& options) {
  const ResolvedNetwork rnet = resolve(cnet);

  SparseDtmc d;
  for (const ResolvedMachine& m : rnet.machines) {
    d.machine_names.push_back(m.name);
    d.machine_state_names.push_back(m.state_names);
  }
  d.var_names = rnet.var_names;
  d.var_value_names = rnet.value_names;
  d.horizon = rnet.horizon;

  const std::size_t num_machines = rnet.machines.size();
  const std::size_t num_vars = rnet.var_names.size();
  const std::size_t stride = num_machines + num_vars + 1;

  std::unordered_map<std::string, std::uint32_t> index;

  std::vector<std::int32_t> packed(stride);
  for (std::size_t m = 0; m < num_machines; ++m) packed[m] = rnet.machines[m].initial;
  for (std::size_t v = 0; v < num_vars; ++v) packed[num_machines + v] = rnet.initial_valuation[v];
  packed[num_machines + num_vars] = 0;

  d.state_blob.insert(d.state_blob.end(), packed.begin(), packed.end());
  index.emplace(pack_bytes(packed.data(), stride), 0);
  d.initial = 0;

  auto intern = [&](const std::vector<std::int32_t>& s) -> std::uint32_t {
    auto key = pack_bytes(s.data(), stride);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (index.size() >= options.state_cap) {
      throw Error(ErrorKind::state_cap_exceeded,
                  "state space exceeds the cap of " + std::to_string(options.state_cap) +
                      " states");
    }
    const auto id = static_cast<std::uint32_t>(index.size());
    index.emplace(std::move(key), id);
    d.state_blob.insert(d.state_blob.end(), s.begin(), s.end());
    return id;
  };

  d.row_offsets.push_back(0);
  bool underflow_warned = false;

  for (std::uint32_t i = 0; i * stride < d.state_blob.size(); ++i) {
    std::vector<std::int32_t> cur(d.state_blob.begin() + i * stride,
                                  d.state_blob.begin() + (i + 1) * stride);
    const int ticks = cur[num_machines + num_vars];

    // (target index -> accumulated probability), ascending by construction.
    std::map<std::uint32_t, double> row;
    if (ticks >= d.horizon) {
      row.emplace(i, 1.0);  // absorbing self-loop at the horizon
    } else {
      std::vector<int> locals(cur.begin(), cur.begin() + num_machines);
      std::vector<int> vals(cur.begin() + num_machines, cur.begin() + num_machines + num_vars);
      std::vector<std::int32_t> next(stride);
      walk_step(rnet, 0, locals, vals, 1.0,
                [&](const std::vector<int>& ls, const std::vector<int>& vs, double p) {
                  for (std::size_t m = 0; m < num_machines; ++m) next[m] = ls[m];
                  for (std::size_t v = 0; v < num_vars; ++v) next[num_machines + v] = vs[v];
                  next[num_machines + num_vars] = ticks + 1;
                  if (p > 0.0 && p < 1e-300 && !underflow_warned) {
                    underflow_warned = true;
                    d.warnings.push_back(
                        "macro-step probability underflow: a branch product dropped below "
                        "1e-300; results for the affected states are unreliable");
                  }
                  row[intern(next)] += p;
                });
    }

    // Kahan-compensated row-sum check.
    double sum = 0.0, comp = 0.0;
    for (const auto& [col, p] : row) {
      double y = p - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9) {
      d.warnings.push_back("row " + std::to_string(i) + " sums to " + format_shortest(sum) +
                           " instead of 1");
    }

    for (const auto& [col, p] : row) {
      d.cols.push_back(col);
      d.probs.push_back(p);
    }
    d.row_offsets.push_back(d.cols.size());
  }

  // var=value labels plus the (normally empty) deadlock label.
  const std::uint32_t n = d.state_count();
  for (std::size_t v = 0; v < num_vars; ++v) {
    for (std::size_t w = 0; w < d.var_value_names[v].size(); ++w) {
      d.labels.emplace(d.var_names[v] + "=" + d.var_value_names[v][w],
                       std::vector<std::uint32_t>{});
    }
  }
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::size_t v = 0; v < num_vars; ++v) {
      d.labels[d.var_names[v] + "=" + d.var_value_names[v][d.value_of(s, static_cast<int>(v))]]
          .push_back(s);
    }
  }
  d.labels.emplace("deadlock", std::vector<std::uint32_t>{});

  return d;
}

void drop_outgoing(SparseDtmc& dtmc, std::uint32_t state) {
  if (state >= dtmc.state_count()) {
    throw Error(ErrorKind::out_of_range,
                "state index " + std::to_string(state) + " is out of range (chain has " +
                    std::to_string(dtmc.state_count()) + " states)");
  }
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> probs;
  cols.reserve(dtmc.cols.size());
  probs.reserve(dtmc.probs.size());
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    if (s != state) {
      auto rc = dtmc.row_cols(s);
      auto rp = dtmc.row_probs(s);
      cols.insert(cols.end(), rc.begin(), rc.end());
      probs.insert(probs.end(), rp.begin(), rp.end());
    }
    offsets.push_back(cols.size());
  }
  dtmc.row_offsets = std::move(offsets);
  dtmc.cols = std::move(cols);
  dtmc.probs = std::move(probs);

  auto& dead = dtmc.labels["deadlock"];
  dead.clear();
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    if (dtmc.row_offsets[s + 1] == dtmc.row_offsets[s]) dead.push_back(s);
  }
}

std::string to_dot(const SparseDtmc& dtmc) {
  std::ostringstream out;
  out << "digraph chain {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontsize=10];\n";
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    out << "  s" << s << " [label=\"" << s << ": " << dtmc.describe(s) << "\"";
    if (s == dtmc.initial) out << ", style=bold";
    out << "];\n";
  }
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    auto rc = dtmc.row_cols(s);
    auto rp = dtmc.row_probs(s);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      out << "  s" << s << " -> s" << rc[k] << " [label=\"" << format_fixed(rp[k], 6)
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string state_space_json(const SparseDtmc& dtmc) {
  nlohmann::ordered_json j;
  j["states"] = nlohmann::ordered_json::array();
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    nlohmann::ordered_json js;
    js["index"] = s;
    nlohmann::ordered_json machines;
    for (std::size_t m = 0; m < dtmc.machine_names.size(); ++m) {
      machines[dtmc.machine_names[m]] =
          dtmc.machine_state_names[m][dtmc.local_of(s, static_cast<int>(m))];
    }
    js["machineStates"] = std::move(machines);
    nlohmann::ordered_json vars;
    for (std::size_t v = 0; v < dtmc.var_names.size(); ++v) {
      vars[dtmc.var_names[v]] = dtmc.var_value_names[v][dtmc.value_of(s, static_cast<int>(v))];
    }
    js["valuation"] = std::move(vars);
    js["ticks"] = dtmc.ticks_of(s);
    j["states"].push_back(std::move(js));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (std::uint32_t s = 0; s < dtmc.state_count(); ++s) {
    auto rc = dtmc.row_cols(s);
    auto rp = dtmc.row_probs(s);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      nlohmann::ordered_json je;
      je["from"] = s;
      je["to"] = rc[k];
      je["p"] = rp[k];
      j["edges"].push_back(std::move(je));
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace tickmc

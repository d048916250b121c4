// tickmc command-line front end.
//
// Subcommands: check, sweep, simulate, export, scenarios.
// Exit codes: 0 success; 1 deadlock-freedom violation; 2 parse or resolution
// error; 3 analysis error (state cap, numeric failure).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tickmc/compose.hpp"
#include "tickmc/engine.hpp"
#include "tickmc/error.hpp"
#include "tickmc/manifest.hpp"
#include "tickmc/model.hpp"
#include "tickmc/numfmt.hpp"
#include "tickmc/parser.hpp"
#include "tickmc/printer.hpp"
#include "tickmc/prism.hpp"
#include "tickmc/simulate.hpp"
#include "tickmc/threading.hpp"
#include "tickmc/uvc.hpp"
#include "tickmc/validate.hpp"
#include "tickmc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDeadlock = 1;
constexpr int kExitParse = 2;
constexpr int kExitAnalysis = 3;

int exit_code_for(const tickmc::Error& err) {
  switch (err.kind()) {
    case tickmc::ErrorKind::state_cap_exceeded:
    case tickmc::ErrorKind::division_by_zero:
      return kExitAnalysis;
    default:
      return kExitParse;
  }
}

int env_threads() {
  if (const char* env = std::getenv("TICKMC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return tickmc::hardware_threads();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw tickmc::Error(tickmc::ErrorKind::io_error, "cannot read file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sibling_path(const std::string& reference, const std::string& stem,
                         const std::string& extension) {
  const auto slash = reference.find_last_of('/');
  const std::string dir = slash == std::string::npos ? "" : reference.substr(0, slash + 1);
  return dir + stem + extension;
}

std::string path_stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return name;
}

// Everything loaded from disk for one invocation.
struct LoadedInputs {
  tickmc::Network network;
  tickmc::PropertyFile properties;
  std::vector<tickmc::ScenarioConfig> configs;  // definition order, later files win
  std::vector<std::pair<std::string, std::string>> files;  // (path, content hash)

  const tickmc::ScenarioConfig* config(const std::string& name) const {
    for (const auto& cfg : configs) {
      if (cfg.name == name) return &cfg;
    }
    return nullptr;
  }
};

// Parses the model, the optional property file, and config definitions from
// property imports (sibling <name>.pcfg of the props file) plus the model's
// sibling <model-stem>.pcfg when present.  Throws Error or reports
// diagnostics and exits with kExitParse.
LoadedInputs load_inputs(const std::string& model_path, const std::string& props_path) {
  LoadedInputs loaded;

  const std::string model_text = read_file(model_path);
  loaded.files.emplace_back(model_path, tickmc::fnv1a64_hex(model_text));
  auto model = tickmc::parse_model(model_text, model_path);
  if (!model.ok()) {
    std::cerr << model.diagnostics.to_string();
    std::exit(kExitParse);
  }
  auto validation = tickmc::validate_network(model.network);
  if (validation.has_errors()) {
    std::cerr << validation.to_string();
    std::exit(kExitParse);
  }
  loaded.network = std::move(model.network);

  std::set<std::string> config_files;
  auto load_config_file = [&](const std::string& path, bool required) {
    if (!config_files.insert(path).second) return;
    std::ifstream probe(path);
    if (!probe && !required) return;
    const std::string text = read_file(path);
    loaded.files.emplace_back(path, tickmc::fnv1a64_hex(text));
    auto parsed = tickmc::parse_config(text, path);
    if (!parsed.ok()) {
      std::cerr << parsed.diagnostics.to_string();
      std::exit(kExitParse);
    }
    for (auto& cfg : parsed.configs) loaded.configs.push_back(std::move(cfg));
  };

  if (!props_path.empty()) {
    const std::string props_text = read_file(props_path);
    loaded.files.emplace_back(props_path, tickmc::fnv1a64_hex(props_text));
    auto props = tickmc::parse_properties(props_text, props_path);
    if (!props.ok()) {
      std::cerr << props.diagnostics.to_string();
      std::exit(kExitParse);
    }
    loaded.properties = std::move(props.properties);
    for (const std::string& module : loaded.properties.imports) {
      load_config_file(sibling_path(props_path, module, ".pcfg"), true);
    }
  }
  load_config_file(sibling_path(model_path, path_stem(model_path), ".pcfg"), false);

  return loaded;
}

void emit(const std::string& payload, const std::string& out_path,
          const tickmc::RunManifest& manifest) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw tickmc::Error(tickmc::ErrorKind::io_error,
                          "cannot write file '" + out_path + "'");
    }
    out << payload;
  }
  std::ofstream mout(out_path + ".manifest.json", std::ios::binary);
  if (!mout) {
    throw tickmc::Error(tickmc::ErrorKind::io_error,
                        "cannot write file '" + out_path + ".manifest.json'");
  }
  mout << manifest.to_json();
}

tickmc::RunManifest make_manifest(const std::vector<std::string>& argv_words,
                                  const LoadedInputs& loaded, const std::string& config,
                                  std::optional<std::uint64_t> seed) {
  tickmc::RunManifest manifest;
  std::ostringstream cmd;
  for (std::size_t i = 0; i < argv_words.size(); ++i) {
    if (i) cmd << " ";
    cmd << argv_words[i];
  }
  manifest.command = cmd.str();
  manifest.inputs = loaded.files;
  manifest.config = config;
  manifest.seed = seed;
  manifest.tool_version = tickmc::kToolVersion;
  manifest.timestamp = tickmc::utc_timestamp_now();
  return manifest;
}

// Applies --t / --t-range / --mode to a parsed property.
tickmc::Query scope_query(tickmc::Query query, std::optional<int> t_flag,
                          std::optional<std::pair<int, int>> range_flag,
                          const std::string& mode_flag, int horizon) {
  if (!mode_flag.empty() && query.kind == tickmc::QueryKind::probability) {
    if (query.tick_mode == tickmc::TickMode::none) {
      std::cerr << "note: --mode ignored for property '" << query.id
                << "' (no ticks constraint)\n";
    } else {
      query.tick_mode = mode_flag == "exact" ? tickmc::TickMode::exact
                                             : tickmc::TickMode::cumulative;
    }
  }
  if (range_flag) {
    query.sweep = range_flag;
  } else if (t_flag) {
    query.tick_value = t_flag;
  } else if (query.symbolic_t && !query.tick_value) {
    query.tick_value = horizon;  // symbolic t defaults to the horizon
  }
  return query;
}

void check_range_within_horizon(const std::optional<std::pair<int, int>>& range,
                                std::optional<int> t_flag, int horizon,
                                const std::string& config_name) {
  if (range) {
    if (range->first < 0 || range->second < range->first || range->second > horizon) {
      throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                          "tick range " + std::to_string(range->first) + ".." +
                              std::to_string(range->second) + " is outside 0.." +
                              std::to_string(horizon) + " for config '" + config_name + "'");
    }
  }
  if (t_flag && (*t_flag < 0 || *t_flag > horizon)) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "tick value " + std::to_string(*t_flag) + " is outside 0.." +
                            std::to_string(horizon) + " for config '" + config_name + "'");
  }
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "--t-range expects A..B, got '" + text + "'");
  }
  try {
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    return std::make_pair(a, b);
  } catch (const std::exception&) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "--t-range expects A..B, got '" + text + "'");
  }
}

void split_scenario(const std::string& scenario, std::string& awareness, std::string& ods) {
  const auto underscore = scenario.find('_');
  if (underscore == std::string::npos) {
    awareness = scenario;
    ods.clear();
  } else {
    awareness = scenario.substr(0, underscore);
    ods = scenario.substr(underscore + 1);
  }
}

// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string model_path;
  std::string props_path;
  std::string config_name;
  std::string configs_csv;
  std::optional<int> t_flag;
  std::string range_text;
  std::string mode_flag;
  std::string out_path;
  std::string format = "dot";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t state_cap = 10'000'000;
  std::string rrf_baseline;
  std::optional<std::int64_t> inject_deadlock;
};

int cmd_check(const std::vector<std::string>& argv_words, const CommonFlags& flags) {
  LoadedInputs loaded = load_inputs(flags.model_path, flags.props_path);
  if (loaded.properties.queries.empty()) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "no properties to check; supply --props");
  }
  const auto range_flag = parse_range(flags.range_text);
  const int threads = env_threads();

  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  bool deadlock_violation = false;
  std::set<std::string> configs_used;

  // Composed chains are cached per config: properties often share one.
  std::map<std::string, tickmc::SparseDtmc> chains;
  for (const tickmc::Query& parsed : loaded.properties.queries) {
    const std::string config_name =
        flags.config_name.empty() ? parsed.config : flags.config_name;
    const tickmc::ScenarioConfig* config = loaded.config(config_name);
    if (config == nullptr) {
      throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                          "unknown config '" + config_name + "'");
    }
    configs_used.insert(config_name);
    auto chain = chains.find(config_name);
    if (chain == chains.end()) {
      tickmc::ConcreteNetwork cnet = tickmc::bind_constants(loaded.network, *config);
      tickmc::ComposeOptions copts;
      copts.state_cap = flags.state_cap;
      tickmc::SparseDtmc dtmc = tickmc::compose(cnet, copts);
      if (flags.inject_deadlock) {
        tickmc::drop_outgoing(dtmc, static_cast<std::uint32_t>(*flags.inject_deadlock));
      }
      chain = chains.emplace(config_name, std::move(dtmc)).first;
    }
    const tickmc::SparseDtmc& dtmc = chain->second;

    check_range_within_horizon(range_flag, flags.t_flag, dtmc.horizon, config_name);
    const tickmc::Query query =
        scope_query(parsed, flags.t_flag, range_flag, flags.mode_flag, dtmc.horizon);
    tickmc::EngineOptions eopts;
    eopts.threads = threads;
    const tickmc::QueryResult result = tickmc::eval_query(dtmc, query, eopts);

    nlohmann::ordered_json jr;
    jr["property"] = result.property;
    jr["config"] = config_name;
    jr["mode"] = result.mode;
    jr["stateCount"] = result.state_count;
    if (result.deadlock_free.has_value()) {
      jr["deadlockFree"] = *result.deadlock_free;
      if (!*result.deadlock_free) {
        deadlock_violation = true;
        nlohmann::ordered_json jd = nlohmann::ordered_json::array();
        for (std::uint32_t s : tickmc::find_deadlocks(dtmc)) {
          jd.push_back({{"state", s}, {"describe", dtmc.describe(s)}});
        }
        jr["deadlocks"] = std::move(jd);
      }
    } else {
      nlohmann::ordered_json jp = nlohmann::ordered_json::array();
      for (const auto& [t, p] : result.points) {
        jp.push_back({{"t", t}, {"probability", p}});
      }
      jr["points"] = std::move(jp);
    }
    jr["wallTimeMs"] = result.wall_time_ms;
    results.push_back(std::move(jr));
  }

  nlohmann::ordered_json j;
  j["model"] = flags.model_path;
  j["results"] = std::move(results);

  std::string configs_join;
  for (const std::string& name : configs_used) {
    if (!configs_join.empty()) configs_join += ",";
    configs_join += name;
  }
  emit(j.dump(2) + "\n", flags.out_path,
       make_manifest(argv_words, loaded, configs_join, std::nullopt));
  return deadlock_violation ? kExitDeadlock : kExitOk;
}

int cmd_sweep(const std::vector<std::string>& argv_words, const CommonFlags& flags) {
  LoadedInputs loaded = load_inputs(flags.model_path, flags.props_path);

  // The swept property: the first probability query in the file.
  const tickmc::Query* swept = nullptr;
  for (const tickmc::Query& q : loaded.properties.queries) {
    if (q.kind == tickmc::QueryKind::probability) {
      if (swept == nullptr) {
        swept = &q;
      } else {
        std::cerr << "note: sweeping '" << swept->id << "'; further probability properties "
                  << "are ignored\n";
        break;
      }
    }
  }
  if (swept == nullptr) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "the property file has no probability property to sweep");
  }

  // Config selection: --configs is a comma-separated subset, default all.
  std::vector<std::string> selected;
  if (flags.configs_csv.empty() || flags.configs_csv == "all") {
    for (const auto& cfg : loaded.configs) selected.push_back(cfg.name);
  } else {
    std::stringstream ss(flags.configs_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) selected.push_back(name);
    }
  }
  if (selected.empty()) {
    throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                        "no configs selected; define them in a .pcfg file");
  }

  const auto range_flag = parse_range(flags.range_text);
  const int threads = env_threads();

  // Bind every config up front so resolution failures exit before analysis.
  struct PerConfig {
    std::string name;
    tickmc::ConcreteNetwork cnet;
    tickmc::Query query;
    std::vector<std::pair<int, double>> points;
    std::optional<std::pair<tickmc::ErrorKind, std::string>> error;
  };
  std::vector<PerConfig> runs;
  for (const std::string& name : selected) {
    const tickmc::ScenarioConfig* config = loaded.config(name);
    if (config == nullptr) {
      throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                          "unknown config '" + name + "'");
    }
    PerConfig run;
    run.name = name;
    run.cnet = tickmc::bind_constants(loaded.network, *config);
    check_range_within_horizon(range_flag, flags.t_flag, run.cnet.horizon, name);
    tickmc::Query query = *swept;
    if (query.tick_mode == tickmc::TickMode::none) {
      throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                          "property '" + query.id +
                              "' has no ticks constraint; sweeping needs one");
    }
    if (!flags.mode_flag.empty()) {
      query.tick_mode = flags.mode_flag == "exact" ? tickmc::TickMode::exact
                                                   : tickmc::TickMode::cumulative;
    }
    query.sweep = range_flag ? *range_flag : std::make_pair(0, run.cnet.horizon);
    run.query = std::move(query);
    runs.push_back(std::move(run));
  }

  // Scenarios evaluate concurrently; each writes only its own slot.
  tickmc::parallel_for(runs.size(), threads, [&](std::size_t i) {
    PerConfig& run = runs[i];
    try {
      tickmc::ComposeOptions copts;
      copts.state_cap = flags.state_cap;
      const tickmc::SparseDtmc dtmc = tickmc::compose(run.cnet, copts);
      tickmc::EngineOptions eopts;
      eopts.threads = 1;
      run.points = tickmc::eval_query(dtmc, run.query, eopts).points;
    } catch (const tickmc::Error& err) {
      run.error = {err.kind(), err.what()};
    }
  });
  for (const PerConfig& run : runs) {
    if (run.error) throw tickmc::Error(run.error->first, run.error->second);
  }

  const char* effective_mode =
      !flags.mode_flag.empty() ? flags.mode_flag.c_str()
                               : tickmc::tick_mode_name(swept->tick_mode);

  // Data rows, sorted by (scenario, t).
  std::sort(runs.begin(), runs.end(),
            [](const PerConfig& a, const PerConfig& b) { return a.name < b.name; });
  std::ostringstream csv;
  csv << "scenario,awareness,ods,t,probability,mode\n";
  for (const PerConfig& run : runs) {
    std::string awareness, ods;
    split_scenario(run.name, awareness, ods);
    for (const auto& [t, p] : run.points) {
      csv << run.name << "," << awareness << "," << ods << "," << t << ","
          << tickmc::format_shortest(p) << "," << effective_mode << "\n";
    }
  }

  // Risk-reduction summary block: baseline ODS profile per awareness level.
  if (!flags.rrf_baseline.empty()) {
    csv << "\n";
    csv << "scenario,awareness,ods,baseline,t,pBaseline,pMitigated,rrf,sil\n";
    for (const PerConfig& run : runs) {
      std::string awareness, ods;
      split_scenario(run.name, awareness, ods);
      if (ods == flags.rrf_baseline || ods.empty()) continue;
      const std::string baseline_name = awareness + "_" + flags.rrf_baseline;
      const auto baseline =
          std::find_if(runs.begin(), runs.end(),
                       [&](const PerConfig& r) { return r.name == baseline_name; });
      if (baseline == runs.end() || baseline->points.empty() || run.points.empty()) {
        continue;
      }
      const auto [tb, pb] = baseline->points.back();
      const auto [tm, pm] = run.points.back();
      if (pb <= 0.0) {
        std::cerr << "note: skipping RRF for '" << run.name << "': baseline probability of '"
                  << baseline_name << "' is zero\n";
        continue;
      }
      const tickmc::SilResult sil = tickmc::risk_reduction_and_sil(pb, pm);
      csv << run.name << "," << awareness << "," << ods << "," << baseline_name << "," << tb
          << "," << tickmc::format_shortest(pb) << "," << tickmc::format_shortest(pm) << ","
          << tickmc::format_shortest(sil.rrf) << ","
          << (sil.sil == 0 ? std::string("none") : "SIL" + std::to_string(sil.sil)) << "\n";
    }
  }

  std::string configs_join;
  for (const PerConfig& run : runs) {
    if (!configs_join.empty()) configs_join += ",";
    configs_join += run.name;
  }
  emit(csv.str(), flags.out_path,
       make_manifest(argv_words, loaded, configs_join, std::nullopt));
  return kExitOk;
}

int cmd_simulate(const std::vector<std::string>& argv_words, const CommonFlags& flags) {
  LoadedInputs loaded = load_inputs(flags.model_path, flags.props_path);
  if (flags.samples == 0) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query, "sample count must be positive");
  }
  const auto range_flag = parse_range(flags.range_text);
  if (range_flag) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "simulate estimates a single t; use --t");
  }
  const int threads = env_threads();

  nlohmann::ordered_json estimates = nlohmann::ordered_json::array();
  std::set<std::string> configs_used;
  for (const tickmc::Query& parsed : loaded.properties.queries) {
    if (parsed.kind != tickmc::QueryKind::probability) {
      std::cerr << "note: skipping '" << parsed.id
                << "': deadlock-freedom is checked exactly, not simulated\n";
      continue;
    }
    const std::string config_name =
        flags.config_name.empty() ? parsed.config : flags.config_name;
    const tickmc::ScenarioConfig* config = loaded.config(config_name);
    if (config == nullptr) {
      throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                          "unknown config '" + config_name + "'");
    }
    configs_used.insert(config_name);
    tickmc::ConcreteNetwork cnet = tickmc::bind_constants(loaded.network, *config);
    check_range_within_horizon(std::nullopt, flags.t_flag, cnet.horizon, config_name);
    const tickmc::Query query =
        scope_query(parsed, flags.t_flag, std::nullopt, flags.mode_flag, cnet.horizon);

    const tickmc::Estimate est =
        tickmc::estimate_probability(cnet, query, flags.samples, flags.seed, threads);
    nlohmann::ordered_json je;
    je["property"] = est.property;
    je["config"] = est.config;
    if (est.t) {
      je["t"] = *est.t;
    } else {
      je["t"] = nullptr;
    }
    je["mode"] = tickmc::tick_mode_name(query.tick_mode);
    je["pHat"] = est.p_hat;
    je["stdErr"] = est.std_err;
    je["samples"] = est.samples;
    je["seed"] = est.seed;
    estimates.push_back(std::move(je));
  }
  if (estimates.empty()) {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "no probability property to simulate");
  }

  nlohmann::ordered_json j;
  j["model"] = flags.model_path;
  j["estimates"] = std::move(estimates);

  std::string configs_join;
  for (const std::string& name : configs_used) {
    if (!configs_join.empty()) configs_join += ",";
    configs_join += name;
  }
  emit(j.dump(2) + "\n", flags.out_path,
       make_manifest(argv_words, loaded, configs_join, flags.seed));
  return kExitOk;
}

int cmd_export(const std::vector<std::string>& argv_words, const CommonFlags& flags) {
  LoadedInputs loaded = load_inputs(flags.model_path, flags.props_path);
  if (flags.config_name.empty()) {
    throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                        "export needs --config to bind the model's constants");
  }
  const tickmc::ScenarioConfig* config = loaded.config(flags.config_name);
  if (config == nullptr) {
    throw tickmc::Error(tickmc::ErrorKind::unknown_identifier,
                        "unknown config '" + flags.config_name + "'");
  }
  tickmc::ConcreteNetwork cnet = tickmc::bind_constants(loaded.network, *config);
  tickmc::ComposeOptions copts;
  copts.state_cap = flags.state_cap;
  tickmc::SparseDtmc dtmc = tickmc::compose(cnet, copts);
  if (flags.inject_deadlock) {
    tickmc::drop_outgoing(dtmc, static_cast<std::uint32_t>(*flags.inject_deadlock));
  }

  std::string payload;
  if (flags.format == "dot") {
    payload = tickmc::to_dot(dtmc);
  } else if (flags.format == "json") {
    payload = tickmc::state_space_json(dtmc);
  } else if (flags.format == "prism") {
    payload = tickmc::export_prism(dtmc);
  } else {
    throw tickmc::Error(tickmc::ErrorKind::invalid_query,
                        "unknown export format '" + flags.format + "'");
  }
  emit(payload, flags.out_path,
       make_manifest(argv_words, loaded, flags.config_name, std::nullopt));
  return kExitOk;
}

int cmd_scenarios(const std::vector<std::string>& argv_words, const CommonFlags& flags) {
  const std::string payload = tickmc::pretty_print(tickmc::scenario_table());
  LoadedInputs empty;
  emit(payload, flags.out_path, make_manifest(argv_words, empty, "", std::nullopt));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> argv_words(argv, argv + argc);

  CLI::App app{"Networks of tick-synchronized probabilistic state machines: "
               "compose, check, sweep, simulate, export."};
  app.set_version_flag("--version", std::string(tickmc::kToolName) + " " +
                                        tickmc::kToolVersion);
  app.require_subcommand(1);

  CommonFlags flags;
  int t_value = -1;
  std::int64_t inject = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_props) {
    cmd->add_option("model", flags.model_path, "model file (.psm)")->required();
    auto* props = cmd->add_option("--props", flags.props_path, "property file (.pprop)");
    if (needs_props) props->required();
    cmd->add_option("--state-cap", flags.state_cap, "reachable-state limit");
    cmd->add_option("--out", flags.out_path,
                    "write the result here (plus a .manifest.json sibling)");
  };

  auto* check = app.add_subcommand("check", "evaluate properties exactly");
  add_common(check, true);
  check->add_option("--config", flags.config_name, "config overriding each property's own");
  check->add_option("--t", t_value, "tick value for symbolic t");
  check->add_option("--t-range", flags.range_text, "tick sweep range A..B");
  check->add_option("--mode", flags.mode_flag, "exact|cumulative tick scoping")
      ->check(CLI::IsMember({"exact", "cumulative"}));
  check->add_option("--inject-deadlock", inject,
                    "drop all outgoing transitions of this state index (fault injection)");

  auto* sweep = app.add_subcommand("sweep", "tabulate a property over t and configs (CSV)");
  add_common(sweep, true);
  sweep->add_option("--configs", flags.configs_csv,
                    "comma-separated config names (default: all)");
  sweep->add_option("--t-range", flags.range_text, "tick sweep range A..B (default 0..horizon)");
  sweep->add_option("--mode", flags.mode_flag, "exact|cumulative tick scoping")
      ->check(CLI::IsMember({"exact", "cumulative"}));
  sweep->add_option("--rrf-baseline", flags.rrf_baseline,
                    "ODS profile name used as the risk-reduction baseline");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of properties");
  add_common(simulate, true);
  simulate->add_option("--config", flags.config_name,
                       "config overriding each property's own");
  simulate->add_option("--t", t_value, "tick value for symbolic t");
  simulate->add_option("--mode", flags.mode_flag, "exact|cumulative tick scoping")
      ->check(CLI::IsMember({"exact", "cumulative"}));
  simulate->add_option("--samples", flags.samples, "number of runs")->required();
  simulate->add_option("--seed", flags.seed, "RNG seed");

  auto* exporter = app.add_subcommand("export", "render the composed chain");
  add_common(exporter, false);
  exporter->add_option("--config", flags.config_name, "config binding the constants")
      ->required();
  exporter->add_option("--format", flags.format, "dot|json|prism")
      ->check(CLI::IsMember({"dot", "json", "prism"}));
  exporter->add_option("--inject-deadlock", inject,
                       "drop all outgoing transitions of this state index (fault injection)");

  auto* scenarios = app.add_subcommand("scenarios", "print the bundled scenario configs");
  scenarios->add_option("--out", flags.out_path,
                        "write the result here (plus a .manifest.json sibling)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (check->count("--t") || simulate->count("--t")) flags.t_flag = t_value;
  if (check->count("--inject-deadlock") || exporter->count("--inject-deadlock")) {
    flags.inject_deadlock = inject;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(argv_words, flags);
    if (app.got_subcommand(sweep)) return cmd_sweep(argv_words, flags);
    if (app.got_subcommand(simulate)) return cmd_simulate(argv_words, flags);
    if (app.got_subcommand(exporter)) return cmd_export(argv_words, flags);
    if (app.got_subcommand(scenarios)) return cmd_scenarios(argv_words, flags);
  } catch (const tickmc::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitAnalysis;
  }
  return kExitOk;
}

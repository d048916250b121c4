// Shared fixtures for the test suite: bundled-file paths, tiny hand-built
// networks, and parsing conveniences.
#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tickmc/model.hpp"
#include "tickmc/parser.hpp"
#include "tickmc/validate.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  const char* dir = std::getenv("TICKMC_DATA");
  return std::string(dir != nullptr ? dir : "data") + "/" + name;
}

inline std::string tickmc_bin() {
  const char* bin = std::getenv("TICKMC_BIN");
  return bin != nullptr ? bin : "./tickmc";
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses model text that is expected to be error-free and validated.
inline tickmc::Network parse_good_model(const std::string& source) {
  auto parsed = tickmc::parse_model(source, "<test>");
  if (!parsed.ok()) throw std::runtime_error("parse failed:\n" + parsed.diagnostics.to_string());
  auto bag = tickmc::validate_network(parsed.network);
  if (bag.has_errors()) throw std::runtime_error("validate failed:\n" + bag.to_string());
  return parsed.network;
}

inline tickmc::ScenarioConfig make_config(
    std::string name, std::vector<std::pair<std::string, tickmc::Rational>> bindings) {
  tickmc::ScenarioConfig cfg;
  cfg.name = std::move(name);
  std::sort(bindings.begin(), bindings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  cfg.bindings = std::move(bindings);
  return cfg;
}

inline tickmc::Rational rat(std::int64_t num, std::int64_t den = 1) {
  auto r = tickmc::Rational::make(num, den);
  if (!r) throw std::runtime_error("bad rational in test");
  return *r;
}

// Two independent fair coins, no shared variables.
inline tickmc::Network coin_pair() {
  return parse_good_model(R"(
const H : count;
horizon H;
machine CoinA {
  initial Heads;
  state Heads, Tails;
  from Heads goto [0.5] Heads or [0.5] Tails;
  from Tails goto [0.5] Heads or [0.5] Tails;
}
machine CoinB {
  initial Heads;
  state Heads, Tails;
  from Heads goto [0.5] Heads or [0.5] Tails;
  from Tails goto [0.5] Heads or [0.5] Tails;
}
)");
}

// Geometric chain: leaves Waiting with probability p per tick, raising flag
// `hit` on arrival in Done (absorbing).
inline tickmc::Network hit_chain() {
  return parse_good_model(R"(
domain Flag { no, yes }
const p : probability;
const H : count;
var hit : Flag = no;
horizon H;
machine Chain {
  initial Waiting;
  state Waiting, Done;
  from Waiting goto [p] Done set hit := yes or [1 - p] Waiting;
  from Done goto [1] Done;
}
)");
}

}  // namespace testutil

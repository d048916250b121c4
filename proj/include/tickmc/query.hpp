// Queries over a composed chain, as produced by the property parser and
// consumed by the engine and the simulator.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tickmc/diagnostics.hpp"

namespace tickmc {

// One var==value / var!=value conjunct of a target predicate.
struct PredAtom {
  std::string var;
  std::string value;
  bool negated = false;
};

enum class QueryKind { probability, deadlock_freedom };

// Tick scope of a probability query: `exact` asks for the target being hit at
// exactly tick t, `cumulative` for it being hit at any tick <= t, `none` for
// anywhere within the horizon.
enum class TickMode { none, exact, cumulative };

struct Query {
  std::string id;
  QueryKind kind = QueryKind::probability;
  std::vector<PredAtom> predicate;  // empty predicate is vacuously true
  TickMode tick_mode = TickMode::none;
  // Set when the property pins a literal tick (`ticks == 5`); symbolic `t`
  // leaves it empty until the analysis run supplies a value or sweep range.
  std::optional<int> tick_value;
  bool symbolic_t = false;
  std::optional<std::pair<int, int>> sweep;  // inclusive t range
  std::string config;                        // `with constants <name>`
  SourceSpan span;
};

struct PropertyFile {
  std::vector<Query> queries;
  std::vector<std::string> imports;  // config module names (import <name>::*)
};

// Result of evaluating one query on one composed chain.
struct QueryResult {
  std::string property;
  std::string config;
  std::string mode;                            // "exact", "cumulative", "none"
  std::vector<std::pair<int, double>> points;  // (t, probability), sorted by t
  std::optional<bool> deadlock_free;           // deadlock-freedom queries only
  std::uint64_t state_count = 0;
  double wall_time_ms = 0.0;
};

const char* tick_mode_name(TickMode mode);

}  // namespace tickmc

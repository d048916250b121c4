// Parsers for the three DSL file kinds: .psm models, .pprop properties and
// .pcfg scenario configurations.
//
// Parsing is total: any byte sequence yields a (possibly partial) result plus
// diagnostics, never a crash or hang.  Errors use panic-mode recovery so one
// run reports as many problems as possible.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tickmc/diagnostics.hpp"
#include "tickmc/model.hpp"
#include "tickmc/query.hpp"

namespace tickmc {

struct ModelParse {
  Network network;
  DiagnosticBag diagnostics;
  bool ok() const { return !diagnostics.has_errors(); }
};

struct PropertyParse {
  PropertyFile properties;
  DiagnosticBag diagnostics;
  bool ok() const { return !diagnostics.has_errors(); }
};

struct ConfigParse {
  std::vector<ScenarioConfig> configs;
  DiagnosticBag diagnostics;
  bool ok() const { return !diagnostics.has_errors(); }
};

ModelParse parse_model(std::string_view source, const std::string& filename = "<model>");
PropertyParse parse_properties(std::string_view source,
                               const std::string& filename = "<properties>");
ConfigParse parse_config(std::string_view source, const std::string& filename = "<config>");

}  // namespace tickmc

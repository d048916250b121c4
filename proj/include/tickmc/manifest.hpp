// Run manifests: provenance records written alongside result files.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tickmc {

struct RunManifest {
  std::string command;  // full command line
  // (path, fnv1a64 content hash as hex) per input file.
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::string timestamp;  // ISO 8601 UTC

  // Reruns with equal manifests produce byte-identical result payloads;
  // the timestamp (and measured wall times) are excluded from that contract.
  std::string to_json() const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);
std::string utc_timestamp_now();

}  // namespace tickmc

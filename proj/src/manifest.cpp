#include "tickmc/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "json.hpp"

namespace tickmc {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return std::string(buf);
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, hash] : inputs) {
    j["inputs"].push_back({{"path", path}, {"fnv1a64", hash}});
  }
  j["config"] = config;
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  j["toolVersion"] = tool_version;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

}  // namespace tickmc

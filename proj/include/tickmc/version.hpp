#pragma once

namespace tickmc {

inline constexpr const char* kToolName = "tickmc";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tickmc

#pragma once

namespace tally {

inline constexpr const char* kEngineName = "tally";
inline constexpr const char* kEngineVersion = "1.0.0";

} // namespace tally

// version.hpp

#pragma once

namespace probeqfi {

inline constexpr const char* kToolName = "probe-qfi";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

} // namespace probeqfi

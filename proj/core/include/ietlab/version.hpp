#pragma once

namespace ietlab {

inline constexpr const char* kToolName = "ietlab";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ietlab

#pragma once

namespace qdse {

inline constexpr const char* kToolName = "qdse";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qdse

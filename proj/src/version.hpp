#pragma once

namespace svbench {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace svbench

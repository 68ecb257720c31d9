#pragma once

namespace somm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace somm

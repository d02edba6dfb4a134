#pragma once

namespace absorder {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace absorder

#pragma once

namespace dylr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dylr

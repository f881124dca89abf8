#pragma once

namespace rocscale {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rocscale

#pragma once

namespace telic {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace telic

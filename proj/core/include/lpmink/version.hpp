#pragma once

namespace lpmink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lpmink

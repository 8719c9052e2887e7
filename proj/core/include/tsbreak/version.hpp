#pragma once

namespace tsbreak {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tsbreak

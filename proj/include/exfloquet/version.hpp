#pragma once

namespace exfl {
inline constexpr const char* kVersion = "0.1.0";
}

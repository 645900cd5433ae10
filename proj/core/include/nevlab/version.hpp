#pragma once

namespace nevlab {
inline constexpr const char* kVersion = "0.1.0";
}

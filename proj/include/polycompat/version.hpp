#pragma once

namespace polycompat {
inline constexpr const char* kVersion = "0.1.0";
}

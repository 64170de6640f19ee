#pragma once

namespace rogers {
inline constexpr const char* kVersion = "0.1.0";
}

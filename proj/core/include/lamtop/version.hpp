#pragma once

namespace lamtop {
inline constexpr const char* kVersion = "1.0.0";
}

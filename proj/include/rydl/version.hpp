#pragma once

namespace rydl {
inline constexpr const char* kVersion = "0.1.0";
}

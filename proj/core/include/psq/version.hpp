#pragma once

namespace psq {
inline constexpr const char* version_string = "0.1.0";
}

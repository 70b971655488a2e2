#pragma once

namespace swpclock {

inline constexpr const char* kVersion = "0.1.0";

}

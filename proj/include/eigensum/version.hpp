#pragma once

namespace eigensum {

inline constexpr const char* kVersion = "eigensum 0.1.0";

}

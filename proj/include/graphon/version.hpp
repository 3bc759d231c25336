#pragma once

namespace graphon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace graphon

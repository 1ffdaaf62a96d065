#pragma once

namespace nsg {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nsg

#pragma once

namespace rcpolar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rcpolar

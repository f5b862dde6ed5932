#pragma once

namespace simplegrp {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace simplegrp

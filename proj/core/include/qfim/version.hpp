#pragma once

namespace qfim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qfim

#pragma once

namespace mstd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mstd

#pragma once

namespace entdiag {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace entdiag

#pragma once

namespace muxdesigner {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace muxdesigner

#pragma once

namespace tecrep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tecrep

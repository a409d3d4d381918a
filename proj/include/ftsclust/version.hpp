#pragma once

namespace ftsclust {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ftsclust

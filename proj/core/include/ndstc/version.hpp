#pragma once

namespace ndstc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ndstc

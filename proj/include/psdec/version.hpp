#pragma once

namespace psdec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace psdec

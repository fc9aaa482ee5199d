#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psdec {

/// Writes an 8-bit RGB PNG (no timestamps or ancillary chunks, so output is
/// byte-identical for identical input).
void write_png_rgb(const std::string& path, int width, int height,
                   const std::vector<std::uint8_t>& rgb);

}  // namespace psdec

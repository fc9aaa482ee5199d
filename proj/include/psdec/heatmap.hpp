#pragma once

#include <string>

#include "psdec/grid.hpp"

namespace psdec {

struct HeatmapStyle {
    // "diverging": blue-white-red with white pinned at 0 (used whenever the
    // field has negative values); "sequential": white-to-red from 0.
    std::string colormap = "diverging";
    int pixel_scale = 1;  // image pixels per sample
};

/// False-colour PNG of a real field: x horizontal, p vertical (increasing
/// upward), labeled axes with min/max ticks. Deterministic output.
void render_heatmap(const RealField& field, const std::string& path,
                    const HeatmapStyle& style = {});

}  // namespace psdec

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ukit/sweep.hpp"

namespace ukit {

struct HeatmapOptions {
    std::string title;
    int width = 640;
    int height = 560;
};

// Self-contained SVG heatmap of value(node) over the scaled (alpha, beta)
// plane. Each node fills the cell bounded by the midpoints to its neighbours;
// colour is linear from blue (minimum) to red (maximum). Failed or non-finite
// nodes are drawn grey.
std::string sweep_heatmap_svg(const std::vector<SweepNode>& nodes, const std::function<double(const SweepNode&)>& value,
                              const HeatmapOptions& opts = {});

}  // namespace ukit

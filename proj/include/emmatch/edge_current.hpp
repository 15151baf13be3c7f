#pragma once

#include <emmatch/geometry.hpp>
#include <emmatch/raster.hpp>

#include <vector>

namespace emmatch {

/// Per-pixel Sobel response (gx, gy) in screen coordinates. The one-pixel
/// border ring is computed with edge-replicated neighbors.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<Vec2> vectors;

    Vec2 at(int x, int y) const { return vectors[static_cast<std::size_t>(y) * width + x]; }
    double magnitude(int x, int y) const { return at(x, y).norm(); }
};

struct EdgeParams {
    double threshold_percent = 0.10;  // fraction of the maximum gradient magnitude
    bool quantize_directions = true;  // snap currents to the 8 compass directions

    void validate() const;
};

struct PixelPos {
    int x = 0;
    int y = 0;
    constexpr bool operator==(const PixelPos&) const = default;
};

/// One virtual current element: an in-plane vector sitting on an edge pixel.
struct CurrentElement {
    Vec2 pos;
    Vec2 vec;
};

/// All current elements of one image, placed on the plane z and carrying the
/// reference point that moments are taken about.
struct CurrentSet {
    std::vector<CurrentElement> elements;
    double z = 0.0;
    Vec2 center;
    int width = 0;
    int height = 0;

    std::size_t size() const { return elements.size(); }
    bool empty() const { return elements.empty(); }
};

/// Unnormalized 3x3 Sobel. Throws DegenerateInputError below 3x3.
GradientField sobel_gradient(const GrayImage& img);

/// Percent-of-max thresholding followed by pairwise non-maximum suppression:
/// a pixel survives when its magnitude strictly exceeds both neighbors on at
/// least two of the W/E, N/S, NW/SE and NE/SW pairs. Row-major order.
std::vector<PixelPos> extract_significant_edges(const GradientField& field, const EdgeParams& params);

/// Rotates each edge gradient a quarter turn visually counterclockwise,
/// (gx, gy) -> (gy, -gx), keeping its magnitude. Zero gradients are dropped.
CurrentSet gradient_to_current(const GradientField& field, const std::vector<PixelPos>& edges,
                               const EdgeParams& params, double z, Vec2 center);

/// Snaps v to the nearest of the 8 compass directions, preserving |v|.
/// Exact ties between two sectors go to the visually counterclockwise one.
Vec2 quantize_direction(Vec2 v);

/// Sobel, edge extraction and current conversion in one call; the moment
/// reference point is the image's grid center.
CurrentSet extract_currents(const GrayImage& img, const EdgeParams& params, double z = 0.0);

/// Debug raster: 255 on edge pixels, 0 elsewhere.
GrayImage edge_map(int width, int height, const std::vector<PixelPos>& edges);

}  // namespace emmatch

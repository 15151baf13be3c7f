#pragma once

#include <emmatch/geometry.hpp>
#include <emmatch/raster.hpp>

#include <cstdint>

namespace emmatch::synthetic {

/// Filled rectangle rendered by 4x4 supersampled coverage, so a border that
/// runs through pixel centers lands at half intensity. `angle_deg` turns the
/// shape clockwise on screen about its own center.
GrayImage rectangle(int width, int height, Vec2 center, double half_w, double half_h,
                    double angle_deg = 0.0, double foreground = 255.0, double background = 0.0);

GrayImage ellipse(int width, int height, Vec2 center, double radius_x, double radius_y,
                  double angle_deg = 0.0, double foreground = 255.0, double background = 0.0);

/// Smooth edge: intensity rises from `low` to `high` across the line through
/// `through` with normal angle `normal_deg`, following a logistic of the given
/// width (pixels).
GrayImage blurred_step(int width, int height, Vec2 through, double normal_deg, double edge_width,
                       double low = 0.0, double high = 255.0);

/// A few random rectangles and ellipses over a dark background. Deterministic
/// for a given seed.
GrayImage random_shapes(int width, int height, std::uint64_t seed, int count = 4);

/// Adds `other` pixelwise into `img` (same size), clamping to [0, 255].
void add_into(GrayImage& img, const GrayImage& other);

}  // namespace emmatch::synthetic

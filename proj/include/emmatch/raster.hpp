#pragma once

#include <emmatch/geometry.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace emmatch {

/// Row-major raster of real-valued intensities (nominal range [0, 255]).
class GrayImage {
public:
    GrayImage(int width, int height, double value = 0.0);
    GrayImage(int width, int height, std::vector<double> pixels);

    int width() const { return width_; }
    int height() const { return height_; }

    double at(int x, int y) const { return pixels_[index(x, y)]; }
    double& at(int x, int y) { return pixels_[index(x, y)]; }

    std::span<const double> pixels() const { return pixels_; }
    std::span<double> pixels() { return pixels_; }

    /// Geometric center of the pixel grid, ((w-1)/2, (h-1)/2).
    Vec2 center() const { return {(width_ - 1) / 2.0, (height_ - 1) / 2.0}; }

    bool same_size(const GrayImage& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<double> pixels_;
};

/// Rotation about a point. Positive angles turn the picture visually
/// clockwise on screen.
struct RotationSpec {
    double angle_deg = 0.0;
    std::optional<Vec2> center;  // defaults to GrayImage::center()
    double fill = 0.0;           // value for samples that fall outside the frame
};

enum class PgmEncoding { binary, ascii };

/// Reads PGM (P2/P5) or PPM (P3/P6). Color is reduced to luminance with
/// weights 0.299/0.587/0.114; values are rescaled to 255 when maxval differs.
GrayImage load_image(const std::filesystem::path& path);

/// Writes P5 (or P2) with maxval 255. Values are rounded half-up and clamped.
void save_image(const GrayImage& img, const std::filesystem::path& path,
                PgmEncoding encoding = PgmEncoding::binary);

/// Inverse-mapped bilinear rotation. Output has the input's dimensions.
GrayImage rotate_image(const GrayImage& img, const RotationSpec& spec);
/// Clockwise about the image center, zero fill.
GrayImage rotate_image(const GrayImage& img, double angle_deg);

/// Sets every pixel outside the inscribed circle about the grid center to fill.
GrayImage mask_circle(const GrayImage& img, double fill = 0.0);

/// Mean absolute difference over the pixels inside the inscribed circle.
double mean_abs_diff_in_circle(const GrayImage& a, const GrayImage& b);

/// Maps any angle in degrees to [0, 360).
double normalize_degrees(double deg);

}  // namespace emmatch

#include <emmatch/synthetic.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace emmatch::synthetic {

namespace {

template <typename Inside>
GrayImage render(int width, int height, Inside inside, double fg, double bg) {
    constexpr int kSub = 4;
    GrayImage img(width, height, bg);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int hits = 0;
            for (int sy = 0; sy < kSub; ++sy) {
                for (int sx = 0; sx < kSub; ++sx) {
                    const double px = x + (sx + 0.5) / kSub - 0.5;
                    const double py = y + (sy + 0.5) / kSub - 0.5;
                    if (inside(px, py)) ++hits;
                }
            }
            const double coverage = static_cast<double>(hits) / (kSub * kSub);
            img.at(x, y) = bg + (fg - bg) * coverage;
        }
    }
    return img;
}

// Point in the shape's own frame (inverse of a clockwise screen rotation).
Vec2 to_local(double px, double py, Vec2 center, double angle_deg) {
    const double t = deg_to_rad(angle_deg);
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double dx = px - center.x;
    const double dy = py - center.y;
    return {dx * c + dy * s, -dx * s + dy * c};
}

}  // namespace

GrayImage rectangle(int width, int height, Vec2 center, double half_w, double half_h,
                    double angle_deg, double foreground, double background) {
    return render(
        width, height,
        [&](double px, double py) {
            const Vec2 p = to_local(px, py, center, angle_deg);
            return std::abs(p.x) <= half_w && std::abs(p.y) <= half_h;
        },
        foreground, background);
}

GrayImage ellipse(int width, int height, Vec2 center, double radius_x, double radius_y,
                  double angle_deg, double foreground, double background) {
    return render(
        width, height,
        [&](double px, double py) {
            const Vec2 p = to_local(px, py, center, angle_deg);
            const double u = p.x / radius_x;
            const double v = p.y / radius_y;
            return u * u + v * v <= 1.0;
        },
        foreground, background);
}

GrayImage blurred_step(int width, int height, Vec2 through, double normal_deg, double edge_width,
                       double low, double high) {
    if (!(edge_width > 0.0)) throw std::invalid_argument("edge_width must be positive");
    const double t = deg_to_rad(normal_deg);
    const Vec2 n{std::cos(t), std::sin(t)};
    GrayImage img(width, height, low);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double s = dot(Vec2{x - through.x, y - through.y}, n);
            img.at(x, y) = low + (high - low) / (1.0 + std::exp(-s / edge_width));
        }
    }
    return img;
}

void add_into(GrayImage& img, const GrayImage& other) {
    if (!img.same_size(other)) throw std::invalid_argument("add_into: size mismatch");
    auto dst = img.pixels();
    auto src = other.pixels();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::clamp(dst[i] + src[i], 0.0, 255.0);
}

GrayImage random_shapes(int width, int height, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GrayImage img(width, height, 0.0);
    const double span = std::min(width, height);
    for (int i = 0; i < count; ++i) {
        const Vec2 c{width * (0.2 + 0.6 * unit(rng)), height * (0.2 + 0.6 * unit(rng))};
        const double a = span * (0.06 + 0.14 * unit(rng));
        const double b = span * (0.06 + 0.14 * unit(rng));
        const double angle = 180.0 * unit(rng);
        const double level = 60.0 + 120.0 * unit(rng);
        const GrayImage shape = unit(rng) < 0.5
                                    ? rectangle(width, height, c, a, b, angle, level, 0.0)
                                    : ellipse(width, height, c, a, b, angle, level, 0.0);
        add_into(img, shape);
    }
    return img;
}

}  // namespace emmatch::synthetic

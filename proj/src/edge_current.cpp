#include <emmatch/edge_current.hpp>

#include <emmatch/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace emmatch {

void EdgeParams::validate() const {
    if (!(threshold_percent > 0.0 && threshold_percent < 1.0)) {
        throw std::invalid_argument("threshold_percent must lie in (0, 1), got " +
                                    std::to_string(threshold_percent));
    }
}

GradientField sobel_gradient(const GrayImage& img) {
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3) {
        throw DegenerateInputError("image too small for the Sobel operator: " + std::to_string(w) +
                                   "x" + std::to_string(h));
    }

    GradientField field{w, h, std::vector<Vec2>(static_cast<std::size_t>(w) * h)};

    // The border ring reads clamped (edge-replicated) neighbors so that
    // suppression next to the border compares against real responses.
    auto px = [&](int x, int y) { return img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)); };

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const bool edge_row = y == 0 || y == h - 1;
        for (int x = 0; x < w; ++x) {
            double nw, n, ne, wv, ev, sw, s, se;
            if (edge_row || x == 0 || x == w - 1) {
                nw = px(x - 1, y - 1), n = px(x, y - 1), ne = px(x + 1, y - 1);
                wv = px(x - 1, y), ev = px(x + 1, y);
                sw = px(x - 1, y + 1), s = px(x, y + 1), se = px(x + 1, y + 1);
            } else {
                nw = img.at(x - 1, y - 1), n = img.at(x, y - 1), ne = img.at(x + 1, y - 1);
                wv = img.at(x - 1, y), ev = img.at(x + 1, y);
                sw = img.at(x - 1, y + 1), s = img.at(x, y + 1), se = img.at(x + 1, y + 1);
            }
            const double gx = (ne + 2.0 * ev + se) - (nw + 2.0 * wv + sw);
            const double gy = (sw + 2.0 * s + se) - (nw + 2.0 * n + ne);
            field.vectors[static_cast<std::size_t>(y) * w + x] = {gx, gy};
        }
    }
    return field;
}

std::vector<PixelPos> extract_significant_edges(const GradientField& field, const EdgeParams& params) {
    params.validate();
    const int w = field.width;
    const int h = field.height;

    std::vector<double> mag(field.vectors.size());
    double max_mag = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i) {
        mag[i] = field.vectors[i].norm();
        max_mag = std::max(max_mag, mag[i]);
    }
    if (max_mag <= 0.0) return {};
    const double threshold = params.threshold_percent * max_mag;

    auto m = [&](int x, int y) { return mag[static_cast<std::size_t>(y) * w + x]; };

    // {W,E}, {N,S}, {NW,SE}, {NE,SW}
    static constexpr std::array<std::array<int, 4>, 4> kPairs{{
        {-1, 0, 1, 0},
        {0, -1, 0, 1},
        {-1, -1, 1, 1},
        {1, -1, -1, 1},
    }};

    std::vector<PixelPos> edges;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double v = m(x, y);
            if (v <= 0.0 || v < threshold) continue;
            int dominated_pairs = 0;
            for (const auto& p : kPairs) {
                if (v > m(x + p[0], y + p[1]) && v > m(x + p[2], y + p[3])) ++dominated_pairs;
            }
            if (dominated_pairs >= 2) edges.push_back({x, y});
        }
    }
    return edges;
}

Vec2 quantize_direction(Vec2 v) {
    const double magnitude = v.norm();
    if (magnitude == 0.0) return {};

    constexpr double s = 0.70710678118654752440;
    // Index k points k*45 degrees visually counterclockwise from east.
    static constexpr std::array<Vec2, 8> kUnit{{
        {1, 0}, {s, -s}, {0, -1}, {-s, -s}, {-1, 0}, {-s, s}, {0, 1}, {s, s},
    }};

    const double visual_deg = std::atan2(-v.y, v.x) * 180.0 / kPi;
    int k = static_cast<int>(std::floor(visual_deg / 45.0 + 0.5));
    k = ((k % 8) + 8) % 8;
    return kUnit[static_cast<std::size_t>(k)] * magnitude;
}

CurrentSet gradient_to_current(const GradientField& field, const std::vector<PixelPos>& edges,
                               const EdgeParams& params, double z, Vec2 center) {
    CurrentSet set;
    set.z = z;
    set.center = center;
    set.width = field.width;
    set.height = field.height;
    set.elements.reserve(edges.size());

    for (const PixelPos& p : edges) {
        if (p.x < 0 || p.y < 0 || p.x >= field.width || p.y >= field.height) {
            throw std::out_of_range("edge pixel outside the gradient field");
        }
        const Vec2 g = field.at(p.x, p.y);
        if (g.x == 0.0 && g.y == 0.0) continue;
        Vec2 current{g.y, -g.x};
        if (params.quantize_directions) current = quantize_direction(current);
        set.elements.push_back({{static_cast<double>(p.x), static_cast<double>(p.y)}, current});
    }
    return set;
}

CurrentSet extract_currents(const GrayImage& img, const EdgeParams& params, double z) {
    const GradientField field = sobel_gradient(img);
    return gradient_to_current(field, extract_significant_edges(field, params), params, z,
                               img.center());
}

GrayImage edge_map(int width, int height, const std::vector<PixelPos>& edges) {
    GrayImage out(width, height, 0.0);
    for (const PixelPos& p : edges) out.at(p.x, p.y) = 255.0;
    return out;
}

}  // namespace emmatch

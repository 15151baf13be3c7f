#include "support.hpp"

#include <emmatch/synthetic.hpp>

#include <algorithm>

namespace testsupport {

GrayImage offcenter_rectangle(double dx, double dy, int size) {
    const Vec2 c = mid(size, size);
    return emmatch::synthetic::rectangle(size, size, {c.x + dx, c.y + dy}, size / 4.0 + 0.5,
                                         size / 4.0 - 5.5);
}

GrayImage smooth_blobs(int w, int h, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GrayImage img(w, h, 0.0);
    for (int i = 0; i < count; ++i) {
        const double cx = w * (0.25 + 0.5 * u(rng)), cy = h * (0.25 + 0.5 * u(rng));
        const double sigma = 3.0 + 4.0 * u(rng), amp = 60.0 + 100.0 * u(rng);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                img.at(x, y) += amp * std::exp(-r2 / (2.0 * sigma * sigma));
            }
    }
    return img;
}

GrayImage centered_rectangle(int size) {
    // 32 -> 8.5 x 5.5, 64 -> 16.5 x 10.5
    const double half_w = size / 4.0 + 0.5;
    const double half_h = size == 32 ? 5.5 : size / 4.0 - 5.5;
    return emmatch::synthetic::rectangle(size, size, mid(size, size), half_w, half_h);
}

}  // namespace testsupport

namespace testsupport {

namespace {

using emmatch::EdgeParams;
using emmatch::GradientField;
using emmatch::PixelPos;

// Edge set straight from the definition, without the library's NMS code.
std::vector<PixelPos> edges_by_definition(const GradientField& f, double tp) {
    double max_mag = 0.0;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) max_mag = std::max(max_mag, f.magnitude(x, y));
    std::vector<PixelPos> out;
    const int pairs[4][4] = {{-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, -1, 1, 1}, {1, -1, -1, 1}};
    for (int y = 1; y + 1 < f.height; ++y) {
        for (int x = 1; x + 1 < f.width; ++x) {
            const double m = f.magnitude(x, y);
            if (m <= 0.0 || m < tp * max_mag) continue;
            int wins = 0;
            for (const auto& p : pairs) {
                if (m > f.magnitude(x + p[0], y + p[1]) && m > f.magnitude(x + p[2], y + p[3])) ++wins;
            }
            if (wins >= 2) out.push_back({x, y});
        }
    }
    return out;
}

bool contains(const std::vector<PixelPos>& v, PixelPos p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

std::vector<std::string> edge_property_failures(const GrayImage& img) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& s) { bad.push_back(s); };

    const GradientField f = emmatch::sobel_gradient(img);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Vec2 g = f.at(x, y);
            const auto o = sobel_at(img, x, y);
            if (std::abs(o[0] - g.x) > 1e-9 || std::abs(o[1] - g.y) > 1e-9) {
                fail("sobel mismatch at " + std::to_string(x) + "," + std::to_string(y));
            }
        }
    }

    // Definition, then monotonicity across a threshold ladder.
    std::vector<PixelPos> previous;
    bool first = true;
    for (double tp : {0.02, 0.05, 0.10, 0.25, 0.5, 0.9}) {
        const EdgeParams p{tp, true};
        const auto edges = emmatch::extract_significant_edges(f, p);
        if (edges != edges_by_definition(f, tp)) fail("edge set differs from definition at " + std::to_string(tp));
        if (!first) {
            for (const PixelPos& e : edges) {
                if (!contains(previous, e)) fail("raising threshold added a pixel at " + std::to_string(tp));
            }
        }
        previous = edges;
        first = false;
    }

    const auto edges = emmatch::extract_significant_edges(f, {});
    for (bool quantize : {false, true}) {
        const EdgeParams p{0.10, quantize};
        const CurrentSet set = emmatch::gradient_to_current(f, edges, p, 0.0, img.center());
        std::size_t nonzero = 0;
        for (const PixelPos& e : edges) nonzero += f.magnitude(e.x, e.y) > 0.0;
        if (set.size() != nonzero) fail("element count differs from nonzero edge count");
        for (const CurrentElement& c : set.elements) {
            const Vec2 g = f.at(static_cast<int>(c.pos.x), static_cast<int>(c.pos.y));
            const double mag = std::hypot(g.x, g.y);
            if (std::abs(std::hypot(c.vec.x, c.vec.y) - mag) > 1e-9 * std::max(1.0, mag)) {
                fail("magnitude not preserved");
            }
            if (!quantize) {
                if (c.vec.x * g.x + c.vec.y * g.y != 0.0) fail("continuous current not perpendicular");
                // Visual counterclockwise quarter turn: (gx, gy) -> (gy, -gx).
                if (c.vec.x != g.y || c.vec.y != -g.x) fail("continuous current not (gy, -gx)");
            } else {
                // One of 8 compass directions, within half a sector of the continuous one.
                const double a = std::atan2(-c.vec.y, c.vec.x) * 180.0 / emmatch::kPi;
                const double k = a / 45.0;
                if (std::abs(k - std::round(k)) > 1e-9) fail("quantized current off the compass");
                const double cont = std::atan2(g.x, g.y) * 180.0 / emmatch::kPi;  // angle of (gy, -gx)
                double d = std::fmod(std::abs(a - cont), 360.0);
                d = std::min(d, 360.0 - d);
                if (d > 22.5 + 1e-9) fail("quantized current more than half a sector off");
            }
        }
    }
    return bad;
}

std::vector<std::string> nms_thinness_failures(int size, double normal_deg, double edge_width,
                                               Vec2 through) {
    std::vector<std::string> bad;
    const GrayImage img =
        emmatch::synthetic::blurred_step(size, size, through, normal_deg, edge_width, 20.0, 230.0);
    const auto edges = emmatch::extract_significant_edges(emmatch::sobel_gradient(img), {});
    if (edges.empty()) bad.push_back("no edge found");

    // Scan along the axis closer to the edge normal, so every line crosses the edge once.
    const double t = normal_deg * emmatch::kPi / 180.0;
    const bool rows = std::abs(std::cos(t)) >= std::abs(std::sin(t));
    std::vector<int> per_line(size, 0);
    for (const PixelPos& e : edges) ++per_line[rows ? e.y : e.x];
    // Rows/columns 1 and size-2 touch the border ring, whose clamped response
    // is weaker along the normal; they are not crossings of the edge proper.
    for (int i = 2; i < size - 2; ++i) {
        if (per_line[i] > 2) {
            bad.push_back("scanline " + std::to_string(i) + " has " + std::to_string(per_line[i]) +
                          " edge pixels");
        }
    }
    return bad;
}

}  // namespace testsupport

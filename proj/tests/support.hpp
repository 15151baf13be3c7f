#pragma once

// Helpers shared by the unit tests and the acceptance runner. The oracles here
// are written from the formulas directly and share no code with the library
// kernels.

#include <emmatch/edge_current.hpp>
#include <emmatch/raster.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

using emmatch::CurrentElement;
using emmatch::CurrentSet;
using emmatch::GrayImage;
using emmatch::Vec2;

/// Fresh per-process scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    namespace fs = std::filesystem;
    static std::random_device rd;
    const fs::path dir = fs::temp_directory_path() /
                         ("emmatch_" + tag + "_" + std::to_string(rd()));
    fs::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

/// Image center for odd and even sizes alike.
inline Vec2 mid(int w, int h) { return {(w - 1) / 2.0, (h - 1) / 2.0}; }

/// 64x64 rectangle whose borders run through pixel centers, shifted `dy` up.
GrayImage offcenter_rectangle(double dx = 0.0, double dy = -12.0, int size = 64);

/// Sum of random Gaussian blobs, no sharp edges anywhere.
GrayImage smooth_blobs(int w, int h, std::uint64_t seed, int count = 5);

/// Centered bright rectangle with borders through pixel centers.
GrayImage centered_rectangle(int size);

// --- independent oracles -------------------------------------------------

struct V3 {
    double x, y, z;
};

inline V3 cross3(V3 a, V3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Total in-plane force of `source` (plane z2) on `acted` (plane z1), one flat
/// loop over all (j, k) pairs.
inline std::array<double, 2> brute_total_force(const std::vector<CurrentElement>& acted, double z1,
                                               const std::vector<CurrentElement>& source,
                                               double z2, double A, double eps) {
    double fx = 0.0, fy = 0.0;
    const std::size_t n = acted.size() * source.size();
    for (std::size_t p = 0; p < n; ++p) {
        const CurrentElement& a = acted[p / source.size()];
        const CurrentElement& s = source[p % source.size()];
        const V3 r{a.pos.x - s.pos.x, a.pos.y - s.pos.y, z1 - z2};
        const double len = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
        if (len < eps) continue;
        const V3 f = cross3({a.vec.x, a.vec.y, 0}, cross3({s.vec.x, s.vec.y, 0}, r));
        fx += A * f.x / (len * len * len);
        fy += A * f.y / (len * len * len);
    }
    return {fx, fy};
}

/// Same pair sum, reported as the total z-moment about `origin`.
inline double brute_total_moment(const std::vector<CurrentElement>& acted, double z1,
                                 const std::vector<CurrentElement>& source, double z2, double A,
                                 double eps, Vec2 origin) {
    double m = 0.0;
    for (const CurrentElement& a : acted) {
        for (const CurrentElement& s : source) {
            const V3 r{a.pos.x - s.pos.x, a.pos.y - s.pos.y, z1 - z2};
            const double len = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
            if (len < eps) continue;
            const V3 f = cross3({a.vec.x, a.vec.y, 0}, cross3({s.vec.x, s.vec.y, 0}, r));
            const double k = A / (len * len * len);
            m += (a.pos.x - origin.x) * f.y * k - (a.pos.y - origin.y) * f.x * k;
        }
    }
    return m;
}

inline CurrentSet random_currents(std::mt19937_64& rng, int max_n, double z) {
    std::uniform_int_distribution<int> count(1, max_n);
    std::uniform_int_distribution<int> coord(0, 31);
    std::uniform_real_distribution<double> comp(-500.0, 500.0);
    CurrentSet s;
    s.z = z;
    s.center = {15.5, 15.5};
    s.width = 32;
    s.height = 32;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        s.elements.push_back({{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))},
                              {comp(rng), comp(rng)}});
    }
    return s;
}

/// 3x3 Sobel response at one pixel, written out term by term; neighbors
/// outside the frame repeat the nearest edge pixel.
inline std::array<double, 2> sobel_at(const GrayImage& g, int x, int y) {
    auto p = [&](int dx, int dy) {
        const int cx = std::min(std::max(x + dx, 0), g.width() - 1);
        const int cy = std::min(std::max(y + dy, 0), g.height() - 1);
        return g.at(cx, cy);
    };
    const double gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
    const double gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
    return {gx, gy};
}

}  // namespace testsupport

namespace testsupport {

/// Runs every edge-pipeline property on one image and returns a description
/// of each violation (empty when all hold).
std::vector<std::string> edge_property_failures(const GrayImage& img);

/// Thinness on a blurred straight step: every scanline crossing the edge has
/// at most 2 edge pixels. Returns violations.
std::vector<std::string> nms_thinness_failures(int size, double normal_deg, double edge_width,
                                               Vec2 through);

}  // namespace testsupport

#pragma once

// Pairwise force kernels behind force_field/total_moment. Two builds of the
// same contract: a serial reference and an OpenMP version that splits the
// acted-on set across threads. Exposed for the tests and the benchmark.

#include <emmatch/edge_current.hpp>
#include <emmatch/geometry.hpp>

#include <span>

namespace emmatch::kernels {

struct KernelInput {
    std::span<const CurrentElement> acted;   // set1
    std::span<const CurrentElement> source;  // set2
    double dz = 0.0;                         // set1.z - set2.z
    double force_constant = 1.0;
    double min_distance = 1e-6;
};

/// Unscaled in-plane contribution of one source element on one acted element.
/// Returns false when the pair is closer than min_distance.
inline bool pair_force(const CurrentElement& acted, const CurrentElement& src, double dz,
                       double min_distance, Vec2& out) {
    const Vec3 r{acted.pos.x - src.pos.x, acted.pos.y - src.pos.y, dz};
    const double r2 = dot(r, r);
    if (r2 < min_distance * min_distance) return false;
    const Vec3 f = cross(lift(acted.vec), cross(lift(src.vec), r));
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    out = {f.x * inv_r3, f.y * inv_r3};
    return true;
}

/// Writes one force per acted element into `forces` (same length as acted).
void forces_serial(const KernelInput& in, std::span<Vec2> forces);
void forces_omp(const KernelInput& in, std::span<Vec2> forces, int threads = 0);

/// Per-element moments about `origin` into `moments`; returns the total.
/// The serial version sums in element order.
double moments_serial(const KernelInput& in, Vec2 origin, std::span<double> moments);
double moments_omp(const KernelInput& in, Vec2 origin, std::span<double> moments, int threads = 0);

/// Worker count used by the OpenMP kernels when `threads` is 0.
void set_default_threads(int threads);
int default_threads();

}  // namespace emmatch::kernels

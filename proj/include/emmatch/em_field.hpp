#pragma once

#include <emmatch/edge_current.hpp>
#include <emmatch/geometry.hpp>

#include <vector>

namespace emmatch {

struct SceneConfig {
    double force_constant = 1.0;  // A, with mu0/4pi folded in
    double z_separation = 0.0;    // distance d between the two planes
    double min_distance = 1e-6;   // pairs closer than this are skipped

    void validate() const;
};

/// How the pairwise kernels accumulate.
///
/// `deterministic` walks set1 then set2 in stored (row-major) order and sums
/// the total moment in set1 order, so results are bit-reproducible.
/// `parallel` splits set1 across OpenMP threads and reduces the total in an
/// unspecified order; totals agree with deterministic mode to ~1e-12 relative.
enum class Execution { deterministic, parallel };

struct ForceSample {
    std::size_t element_index = 0;
    Vec2 force;  // in-plane part; the z-component is discarded
};

struct MomentResult {
    double total = 0.0;                // z-component of the total moment
    std::vector<double> per_element;   // one entry per element of the acted-on set

    /// Sum of |per_element|, the natural scale for "is this moment zero".
    double abs_sum() const;
};

/// Field of `source` at a 3D point: A * sum (T_k x r) / |r|^3, r from the
/// element (lifted to source.z) to the point. Elements closer than
/// min_distance are skipped.
Vec3 field_at(Vec3 point, const CurrentSet& source, const SceneConfig& cfg);

/// Force on element j of set1 from every element of set2:
/// A * sum T1j x (T2k x r_kj) / |r_kj|^3 with r_kj pointing from T2k to T1j.
/// The plane offset is set1.z - set2.z.
ForceSample force_on_element(const CurrentSet& set1, std::size_t j, const CurrentSet& set2,
                             const SceneConfig& cfg);

/// Force on every element of set1 from set2.
std::vector<ForceSample> force_field(const CurrentSet& set1, const CurrentSet& set2,
                                     const SceneConfig& cfg,
                                     Execution exec = Execution::deterministic);

/// m_z = rx*fy - ry*fx with r = point - origin. In screen coordinates a
/// negative value turns the picture visually counterclockwise, a positive
/// one clockwise.
constexpr double moment_of_force(Vec2 point, Vec2 force, Vec2 origin) {
    return cross(point - origin, force);
}

/// Moment about set1.center of the forces set2 exerts on set1.
MomentResult total_moment(const CurrentSet& set1, const CurrentSet& set2, const SceneConfig& cfg,
                          Execution exec = Execution::deterministic);

/// Places both sets at z = 0 and z = cfg.z_separation respectively.
void place_on_planes(CurrentSet& lower, CurrentSet& upper, const SceneConfig& cfg);

}  // namespace emmatch

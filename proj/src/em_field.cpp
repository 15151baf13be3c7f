#include <emmatch/em_field.hpp>

#include <emmatch/kernels.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace emmatch {

void SceneConfig::validate() const {
    if (!(force_constant > 0.0)) throw std::invalid_argument("force_constant must be positive");
    if (!(min_distance > 0.0)) throw std::invalid_argument("min_distance must be positive");
    if (!(z_separation >= 0.0)) throw std::invalid_argument("z_separation must be non-negative");
}

double MomentResult::abs_sum() const {
    double s = 0.0;
    for (double m : per_element) s += std::abs(m);
    return s;
}

namespace {

kernels::KernelInput make_input(const CurrentSet& set1, const CurrentSet& set2,
                                const SceneConfig& cfg) {
    cfg.validate();
    const double dz = set1.z - set2.z;
    if (std::abs(std::abs(dz) - cfg.z_separation) > 1e-9 * (1.0 + cfg.z_separation)) {
        throw std::invalid_argument("plane heights differ by " + std::to_string(std::abs(dz)) +
                                    " but z_separation is " + std::to_string(cfg.z_separation));
    }
    return {set1.elements, set2.elements, dz, cfg.force_constant, cfg.min_distance};
}

}  // namespace

Vec3 field_at(Vec3 point, const CurrentSet& source, const SceneConfig& cfg) {
    cfg.validate();
    Vec3 b;
    for (const CurrentElement& e : source.elements) {
        const Vec3 r = point - lift(e.pos, source.z);
        const double r2 = dot(r, r);
        if (r2 < cfg.min_distance * cfg.min_distance) continue;
        b += cross(lift(e.vec), r) * (1.0 / (r2 * std::sqrt(r2)));
    }
    return b * cfg.force_constant;
}

ForceSample force_on_element(const CurrentSet& set1, std::size_t j, const CurrentSet& set2,
                             const SceneConfig& cfg) {
    if (j >= set1.size()) throw std::out_of_range("force_on_element: index out of range");
    const kernels::KernelInput all = make_input(set1, set2, cfg);
    kernels::KernelInput one = all;
    one.acted = all.acted.subspan(j, 1);
    Vec2 f;
    kernels::forces_serial(one, std::span<Vec2>(&f, 1));
    return {j, f};
}

std::vector<ForceSample> force_field(const CurrentSet& set1, const CurrentSet& set2,
                                     const SceneConfig& cfg, Execution exec) {
    const kernels::KernelInput in = make_input(set1, set2, cfg);
    std::vector<Vec2> forces(set1.size());
    if (exec == Execution::parallel) {
        kernels::forces_omp(in, forces);
    } else {
        kernels::forces_serial(in, forces);
    }
    std::vector<ForceSample> out;
    out.reserve(forces.size());
    for (std::size_t j = 0; j < forces.size(); ++j) out.push_back({j, forces[j]});
    return out;
}

MomentResult total_moment(const CurrentSet& set1, const CurrentSet& set2, const SceneConfig& cfg,
                          Execution exec) {
    const kernels::KernelInput in = make_input(set1, set2, cfg);
    MomentResult result;
    result.per_element.resize(set1.size());
    result.total = exec == Execution::parallel
                       ? kernels::moments_omp(in, set1.center, result.per_element)
                       : kernels::moments_serial(in, set1.center, result.per_element);
    return result;
}

void place_on_planes(CurrentSet& lower, CurrentSet& upper, const SceneConfig& cfg) {
    lower.z = 0.0;
    upper.z = cfg.z_separation;
}

}  // namespace emmatch

#include <emmatch/kernels.hpp>

#include <cassert>

namespace emmatch::kernels {

void forces_serial(const KernelInput& in, std::span<Vec2> forces) {
    assert(forces.size() == in.acted.size());
    for (std::size_t j = 0; j < in.acted.size(); ++j) {
        Vec2 sum;
        Vec2 term;
        for (const CurrentElement& src : in.source) {
            if (pair_force(in.acted[j], src, in.dz, in.min_distance, term)) sum += term;
        }
        forces[j] = sum * in.force_constant;
    }
}

double moments_serial(const KernelInput& in, Vec2 origin, std::span<double> moments) {
    assert(moments.size() == in.acted.size());
    double total = 0.0;
    for (std::size_t j = 0; j < in.acted.size(); ++j) {
        Vec2 sum;
        Vec2 term;
        for (const CurrentElement& src : in.source) {
            if (pair_force(in.acted[j], src, in.dz, in.min_distance, term)) sum += term;
        }
        moments[j] = cross(in.acted[j].pos - origin, sum * in.force_constant);
        total += moments[j];
    }
    return total;
}

}  // namespace emmatch::kernels

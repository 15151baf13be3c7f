#include <emmatch/kernels.hpp>

#include <atomic>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emmatch::kernels {

namespace {
std::atomic<int> g_default_threads{0};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const int configured = g_default_threads.load();
    if (configured > 0) return configured;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}
}  // namespace

void set_default_threads(int threads) { g_default_threads.store(threads > 0 ? threads : 0); }

int default_threads() { return resolve_threads(0); }

void forces_omp(const KernelInput& in, std::span<Vec2> forces, int threads) {
    assert(forces.size() == in.acted.size());
    const auto n = static_cast<std::ptrdiff_t>(in.acted.size());
    const int workers = resolve_threads(threads);
    (void)workers;

#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        Vec2 sum;
        Vec2 term;
        for (const CurrentElement& src : in.source) {
            if (pair_force(in.acted[j], src, in.dz, in.min_distance, term)) sum += term;
        }
        forces[j] = sum * in.force_constant;
    }
}

double moments_omp(const KernelInput& in, Vec2 origin, std::span<double> moments, int threads) {
    assert(moments.size() == in.acted.size());
    const auto n = static_cast<std::ptrdiff_t>(in.acted.size());
    const int workers = resolve_threads(threads);
    (void)workers;
    double total = 0.0;

#pragma omp parallel for schedule(dynamic, 16) num_threads(workers) reduction(+ : total)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        Vec2 sum;
        Vec2 term;
        for (const CurrentElement& src : in.source) {
            if (pair_force(in.acted[j], src, in.dz, in.min_distance, term)) sum += term;
        }
        const double m = cross(in.acted[j].pos - origin, sum * in.force_constant);
        moments[j] = m;
        total += m;
    }
    return total;
}

}  // namespace emmatch::kernels

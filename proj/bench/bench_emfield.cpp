// Serial vs OpenMP force kernel on synthetic current sets of growing size.
//
//   bench_emfield [--reps N] [--threads T]

#include <emmatch/kernels.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace emmatch;

namespace {

std::vector<CurrentElement> random_set(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 256.0);
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    std::vector<CurrentElement> out(n);
    for (auto& e : out) {
        e.pos = {std::floor(pos(rng)), std::floor(pos(rng))};
        e.vec = {400.0 * dir(rng), 400.0 * dir(rng)};
    }
    return out;
}

template <typename F>
double best_seconds(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 5;
    int threads = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--reps")) reps = std::atoi(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--threads")) threads = std::atoi(argv[i + 1]);
    }

    int workers = 1;
#ifdef _OPENMP
    workers = threads > 0 ? threads : omp_get_max_threads();
#endif
    std::printf("openmp workers: %d\n", workers);
    std::printf("%8s %12s %12s %9s %12s\n", "N", "serial[s]", "omp[s]", "speedup", "|diff|/sum");

    for (std::size_t n : {250u, 500u, 1000u, 2000u, 4000u}) {
        const auto acted = random_set(n, 1 + n);
        const auto source = random_set(n, 7 + n);
        const kernels::KernelInput in{acted, source, 10.0, 1.0, 1e-6};
        std::vector<double> m_serial(n), m_omp(n);
        double total_serial = 0.0, total_omp = 0.0;

        const double ts = best_seconds(reps, [&] {
            total_serial = kernels::moments_serial(in, {128.0, 128.0}, m_serial);
        });
        const double tp = best_seconds(reps, [&] {
            total_omp = kernels::moments_omp(in, {128.0, 128.0}, m_omp, threads);
        });

        double abs_sum = 0.0;
        for (double v : m_serial) abs_sum += std::abs(v);
        std::printf("%8zu %12.5f %12.5f %9.2f %12.2e\n", n, ts, tp, ts / tp,
                    std::abs(total_serial - total_omp) / abs_sum);
    }
    return 0;
}

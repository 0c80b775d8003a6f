// Timing harness for the sweep kernels: runs each workload through the
// serial reference path (jobs=1) and through OpenMP, reports the speedup.

#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include "qwalk/bound_states.hpp"
#include "qwalk/localisation.hpp"
#include "qwalk/open_system.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds_since(t0);
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %7.3f s   parallel %7.3f s   speedup %.2fx\n",
                name, serial, parallel, serial / parallel);
}

void bench_localisation_sweep(int jobs) {
    constexpr int n_phi = 64;
    constexpr int steps = 150;
    std::vector<double> pr(n_phi);
    auto run = [&](int j) {
        parallel_for(n_phi, j, [&](std::size_t i) {
            const double phi = two_pi * i / n_phi;
            pr[i] = participation_ratio(
                averaged_distribution(pi / 4.0, phi, steps, CoinState{1.0, 0.0}));
        });
    };
    const double ts = timed([&] { run(1); });
    const double tp = timed([&] { run(jobs); });
    report("localisation phi-sweep", ts, tp);
}

void bench_blp_grid(int jobs) {
    BlpOptions options;
    options.grid_gamma = 32;
    options.grid_eta = 32;
    options.refine = false;
    auto run = [&](int j) {
        options.jobs = j;
        blp_measure(pi / 4.0, pi, 300, options);
    };
    const double ts = timed([&] { run(1); });
    const double tp = timed([&] { run(jobs); });
    report("blp pair grid (32x32)", ts, tp);
}

void bench_ring_sweep(int jobs) {
    constexpr int n_phi = 8;
    std::vector<double> first(n_phi);
    auto run = [&](int j) {
        parallel_for(n_phi, j, [&](std::size_t i) {
            first[i] = diagonalize_ring(pi / 4.0, two_pi * i / n_phi, 201).energies[0];
        });
    };
    const double ts = timed([&] { run(1); });
    const double tp = timed([&] { run(jobs); });
    report("ring diagonalization x8", ts, tp);
}

}  // namespace

int main() {
    const int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::printf("workers: %d\n", jobs);
    bench_localisation_sweep(jobs);
    bench_blp_grid(jobs);
    bench_ring_sweep(jobs);
    return 0;
}

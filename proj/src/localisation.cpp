#include "qwalk/localisation.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

AveragedDistribution averaged_distribution(double theta, double phi, int t,
                                           const CoinState& first,
                                           const CoinState& second,
                                           int p0_window) {
    if (std::abs(first.inner(second)) > 1e-12) {
        throw std::invalid_argument("initial coin pair is not orthogonal");
    }
    if (t < 0) throw std::invalid_argument("negative step count");

    const WalkConfig config = make_config(theta, phi, t);
    const int N = config.half_width * 2 + 1;
    const int window = std::min(p0_window, t / 2);

    AveragedDistribution out;
    out.half_width = config.half_width;
    out.t = t;
    out.pair_first = first;
    out.p_mean.assign(N, 0.0);
    out.p0_window = window;

    for (const CoinState& coin : {first, second}) {
        WalkerState state = make_origin_state(config.half_width, coin);
        if (t == 0) {
            const auto dist = position_distribution(state);
            for (int i = 0; i < N; ++i) out.p_mean[i] += 0.5 * dist.p[i];
            continue;
        }
        evolve(std::move(state), config, t, [&](const WalkerState& s) {
            if (s.time == t) {
                const auto dist = position_distribution(s);
                for (int i = 0; i < N; ++i) out.p_mean[i] += 0.5 * dist.p[i];
            }
            if (window > 0 && s.time % 2 == 0 && s.time > t - 2 * window) {
                out.p0_window_mean +=
                    0.5 * (std::norm(s.amp(Coin::Up, 0)) + std::norm(s.amp(Coin::Down, 0)));
            }
        });
    }
    if (window > 0) out.p0_window_mean /= window;
    return out;
}

AveragedDistribution averaged_distribution(double theta, double phi, int t,
                                           const CoinState& first, int p0_window) {
    return averaged_distribution(theta, phi, t, first, first.antipode(), p0_window);
}

double participation_ratio(const std::vector<double>& p) {
    double pr = 0.0;
    for (double v : p) pr += v * v;
    return pr;
}

double participation_ratio(const AveragedDistribution& dist) {
    return participation_ratio(dist.p_mean);
}

double mean_origin_probability(const AveragedDistribution& dist) {
    return dist.p0_window_mean;
}

}  // namespace qwalk

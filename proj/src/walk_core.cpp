#include "qwalk/walk_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qwalk {

WalkConfig make_config(double theta, double phi, int t_max) {
    WalkConfig config;
    config.theta = theta;
    config.phi = phi;
    config.half_width = t_max + 2;  // ballistic light cone: one site per step
    config.boundary = Boundary::OpenPadded;
    return config;
}

double WalkerState::norm_squared() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return s;
}

WalkerState make_origin_state(int L, const CoinState& coin) {
    WalkerState state(L);
    state.amp(Coin::Up, 0) = coin.up;
    state.amp(Coin::Down, 0) = coin.down;
    return state;
}

double ProbabilityDistribution::total() const {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

double ProbabilityDistribution::variance() const {
    double mean = 0.0;
    for (int n = -half_width; n <= half_width; ++n) mean += n * at(n);
    double var = 0.0;
    for (int n = -half_width; n <= half_width; ++n) {
        const double d = n - mean;
        var += d * d * at(n);
    }
    return var;
}

void apply_coin(WalkerState& state, double theta) {
    const double c = std::cos(theta);
    const cplx ms(0.0, -std::sin(theta));  // -i sin(theta)
    const int N = state.site_count();
    cplx* up = state.amps.data();
    cplx* down = up + N;
    for (int i = 0; i < N; ++i) {
        const cplx u = up[i];
        const cplx d = down[i];
        up[i] = c * u + ms * d;
        down[i] = ms * u + c * d;
    }
}

void apply_phase(WalkerState& state, double phi) {
    const cplx f = std::polar(1.0, phi);
    state.amp(Coin::Up, 0) *= f;
    state.amp(Coin::Down, 0) *= f;
}

void apply_shift(WalkerState& state, Boundary boundary) {
    const int N = state.site_count();
    cplx* up = state.amps.data();
    cplx* down = up + N;
    if (boundary == Boundary::Ring) {
        std::rotate(up, up + N - 1, up + N);      // n -> n+1 with wraparound
        std::rotate(down, down + 1, down + N);    // n -> n-1
        return;
    }
    if (std::norm(up[N - 1]) > 1e-30 || std::norm(down[0]) > 1e-30) {
        throw boundary_error("amplitude reached the open-lattice edge; "
                             "increase the half-width");
    }
    std::copy_backward(up, up + N - 1, up + N);
    up[0] = 0.0;
    std::copy(down + 1, down + N, down);
    down[N - 1] = 0.0;
}

void apply_sublattice(WalkerState& state) {
    const int L = state.half_width;
    for (int c = 0; c < 2; ++c)
        for (int n = -L; n <= L; ++n)
            if (n & 1) state.amp(static_cast<Coin>(c), n) = -state.amp(static_cast<Coin>(c), n);
}

void apply_reflection(WalkerState& state) {
    const int L = state.half_width;
    WalkerState out(L);
    out.time = state.time;
    for (int n = -L; n <= L; ++n) {
        out.amp(Coin::Up, n) = state.amp(Coin::Down, -n);
        out.amp(Coin::Down, n) = state.amp(Coin::Up, -n);
    }
    state = std::move(out);
}

void step_in_place(WalkerState& state, const WalkConfig& config) {
    apply_phase(state, config.phi);
    apply_coin(state, config.theta);
    apply_shift(state, config.boundary);
    ++state.time;
}

WalkerState step(const WalkerState& state, const WalkConfig& config) {
    WalkerState next = state;
    step_in_place(next, config);
    return next;
}

WalkerState evolve(WalkerState state, const WalkConfig& config, int steps,
                   const StepCallback& on_step) {
    for (int t = 1; t <= steps; ++t) {
        step_in_place(state, config);
        if (t % 100 == 0 && std::abs(state.norm_squared() - 1.0) > 1e-9) {
            throw numerics_error("norm drift exceeded 1e-9 at step " +
                                 std::to_string(state.time));
        }
        if (on_step) on_step(state);
    }
    return state;
}

ProbabilityDistribution position_distribution(const WalkerState& state) {
    const int N = state.site_count();
    ProbabilityDistribution dist;
    dist.half_width = state.half_width;
    dist.p.resize(N);
    const cplx* up = state.amps.data();
    const cplx* down = up + N;
    for (int i = 0; i < N; ++i) dist.p[i] = std::norm(up[i]) + std::norm(down[i]);
    return dist;
}

}  // namespace qwalk

#pragma once

#include <functional>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

enum class Coin : int { Up = 0, Down = 1 };

enum class Boundary { OpenPadded, Ring };

// Geometry and parameters of one walk: coin angle theta, impurity phase phi
// applied at the origin, sites n in [-L, L].
struct WalkConfig {
    double theta = pi / 4.0;
    double phi = 0.0;
    int half_width = 1;
    Boundary boundary = Boundary::OpenPadded;
};

// Open lattice padded so that t_max steps can never reach the edge.
WalkConfig make_config(double theta, double phi, int t_max);

// Dense coin x position amplitude field a_{c,n}(t), n in [-L, L].
struct WalkerState {
    int half_width = 0;
    int time = 0;
    std::vector<cplx> amps;  // coin-major: [c * (2L+1) + (n + L)]

    WalkerState() = default;
    explicit WalkerState(int L)
        : half_width(L), amps(2 * static_cast<std::size_t>(2 * L + 1)) {}

    int site_count() const { return 2 * half_width + 1; }

    cplx& amp(Coin c, int n) {
        return amps[static_cast<int>(c) * site_count() + n + half_width];
    }
    const cplx& amp(Coin c, int n) const {
        return amps[static_cast<int>(c) * site_count() + n + half_width];
    }

    double norm_squared() const;
};

// Initial state |coin> x |0> on a lattice of half-width L.
WalkerState make_origin_state(int L, const CoinState& coin);

struct ProbabilityDistribution {
    int half_width = 0;
    std::vector<double> p;  // index n + half_width

    double at(int n) const { return p[n + half_width]; }
    double total() const;
    double variance() const;  // about the mean position
};

// Per-site coin rotation exp(-i theta sigma_x).
void apply_coin(WalkerState& state, double theta);

// Multiplies the origin amplitudes by e^{i phi}.
void apply_phase(WalkerState& state, double phi);

// Conditional translation: up-amplitudes move right, down-amplitudes move
// left (wrapping around on a ring). Throws boundary_error if an OpenPadded
// lattice would lose amplitude over the edge.
void apply_shift(WalkerState& state, Boundary boundary);

// Sublattice parity operator: multiplies site n by (-1)^n.
void apply_sublattice(WalkerState& state);

// Spatial mirror n -> -n combined with a coin flip.
void apply_reflection(WalkerState& state);

// One step of the impurity walk. Order of operations: origin phase, then
// coin rotation, then conditional shift (other conventions exist; this one
// is fixed project-wide).
void step_in_place(WalkerState& state, const WalkConfig& config);
WalkerState step(const WalkerState& state, const WalkConfig& config);

// t steps of the walk. The norm is re-checked every 100 steps and a drift
// beyond 1e-9 raises numerics_error. The callback, when given, sees the
// state after every step.
using StepCallback = std::function<void(const WalkerState&)>;
WalkerState evolve(WalkerState state, const WalkConfig& config, int steps,
                   const StepCallback& on_step = nullptr);

ProbabilityDistribution position_distribution(const WalkerState& state);

}  // namespace qwalk

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "qwalk/walk_core.hpp"

using namespace qwalk;

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

WalkerState random_state(int L, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    WalkerState state(L);
    for (cplx& a : state.amps) a = cplx(dist(rng), dist(rng));
    const double norm = std::sqrt(state.norm_squared());
    for (cplx& a : state.amps) a /= norm;
    return state;
}

// The coin mixes components within a site, so a state must vanish on both
// components of the edge sites for one shift to stay in bounds.
WalkerState clear_edges(WalkerState state) {
    const int L = state.half_width;
    for (int c = 0; c < 2; ++c) {
        state.amp(static_cast<Coin>(c), L) = 0.0;
        state.amp(static_cast<Coin>(c), -L) = 0.0;
    }
    return state;
}

double max_abs_diff(const WalkerState& a, const WalkerState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
    }
    return m;
}

// Independent reference for the translation-invariant walk: amplitudes kept
// in a map keyed by (coin, site), no shared code with WalkerState kernels.
std::map<std::pair<int, int>, cplx> reference_standard_walk(double theta,
                                                            const CoinState& coin,
                                                            int steps) {
    std::map<std::pair<int, int>, cplx> amps;
    amps[{0, 0}] = coin.up;
    amps[{1, 0}] = coin.down;
    const double c = std::cos(theta);
    const cplx ms(0.0, -std::sin(theta));
    for (int t = 0; t < steps; ++t) {
        std::map<std::pair<int, int>, cplx> next;
        for (const auto& [key, a] : amps) {
            const auto [coin_idx, n] = key;
            const cplx to_up = (coin_idx == 0) ? c * a : ms * a;
            const cplx to_down = (coin_idx == 0) ? ms * a : c * a;
            next[{0, n + 1}] += to_up;
            next[{1, n - 1}] += to_down;
        }
        amps = std::move(next);
    }
    return amps;
}

}  // namespace

TEST_CASE("coin rotation closed forms") {
    WalkerState state = make_origin_state(3, CoinState{1.0, 0.0});

    SUBCASE("theta = 0 is the identity") {
        WalkerState before = state;
        apply_coin(state, 0.0);
        CHECK(max_abs_diff(state, before) == 0.0);
    }
    SUBCASE("theta = pi/4 mixes with -i") {
        apply_coin(state, pi / 4.0);
        CHECK(std::abs(state.amp(Coin::Up, 0) - cplx(inv_sqrt2, 0.0)) < 1e-15);
        CHECK(std::abs(state.amp(Coin::Down, 0) - cplx(0.0, -inv_sqrt2)) < 1e-15);
    }
    SUBCASE("theta = pi/2 is -i sigma_x") {
        apply_coin(state, pi / 2.0);
        CHECK(std::abs(state.amp(Coin::Up, 0)) < 1e-16);
        CHECK(std::abs(state.amp(Coin::Down, 0) - cplx(0.0, -1.0)) < 1e-15);
    }
}

TEST_CASE("origin phase") {
    SUBCASE("phi = 0 leaves the state alone") {
        WalkerState state = make_origin_state(2, coin_symmetric());
        WalkerState before = state;
        apply_phase(state, 0.0);
        CHECK(max_abs_diff(state, before) == 0.0);
    }
    SUBCASE("phi = pi flips the origin sign") {
        WalkerState state = make_origin_state(2, CoinState{1.0, 0.0});
        apply_phase(state, pi);
        CHECK(std::abs(state.amp(Coin::Up, 0) - cplx(-1.0, 0.0)) < 1e-15);
    }
    SUBCASE("no support at the origin: unchanged") {
        WalkerState state(2);
        state.amp(Coin::Up, 1) = 1.0;
        WalkerState before = state;
        apply_phase(state, 1.23);
        CHECK(max_abs_diff(state, before) == 0.0);
    }
}

TEST_CASE("conditional shift") {
    SUBCASE("up moves right, down moves left") {
        WalkerState state(2);
        state.amp(Coin::Up, 0) = inv_sqrt2;
        state.amp(Coin::Down, 0) = inv_sqrt2;
        apply_shift(state, Boundary::OpenPadded);
        CHECK(std::abs(state.amp(Coin::Up, 1) - cplx(inv_sqrt2, 0.0)) < 1e-16);
        CHECK(std::abs(state.amp(Coin::Down, -1) - cplx(inv_sqrt2, 0.0)) < 1e-16);
        CHECK(std::abs(state.amp(Coin::Up, 0)) == 0.0);
    }
    SUBCASE("ring of 3 sites wraps around") {
        WalkerState state(1);  // sites {-1, 0, 1}
        state.amp(Coin::Up, 1) = 1.0;
        apply_shift(state, Boundary::Ring);
        CHECK(std::abs(state.amp(Coin::Up, -1) - cplx(1.0, 0.0)) < 1e-16);
    }
    SUBCASE("overflow raises boundary_error") {
        WalkerState state(1);
        state.amp(Coin::Up, 1) = 1.0;
        CHECK_THROWS_AS(apply_shift(state, Boundary::OpenPadded), boundary_error);
    }
}

TEST_CASE("single step closed forms") {
    const WalkConfig base = make_config(pi / 4.0, 0.0, 4);

    SUBCASE("up coin, phi = 0") {
        WalkerState state = make_origin_state(base.half_width, CoinState{1.0, 0.0});
        state = step(state, base);
        CHECK(std::abs(state.amp(Coin::Up, 1) - cplx(inv_sqrt2, 0.0)) < 1e-15);
        CHECK(std::abs(state.amp(Coin::Down, -1) - cplx(0.0, -inv_sqrt2)) < 1e-15);
        CHECK(state.time == 1);
    }
    SUBCASE("phi = pi flips the overall sign of the origin step") {
        WalkConfig config = base;
        config.phi = pi;
        WalkerState state = make_origin_state(config.half_width, CoinState{1.0, 0.0});
        state = step(state, config);
        CHECK(std::abs(state.amp(Coin::Up, 1) - cplx(-inv_sqrt2, 0.0)) < 1e-15);
        CHECK(std::abs(state.amp(Coin::Down, -1) - cplx(0.0, inv_sqrt2)) < 1e-15);
    }
    SUBCASE("theta = 0 is pure transport") {
        WalkConfig config = base;
        config.theta = 0.0;
        config.phi = 0.77;
        WalkerState state(config.half_width);
        state.amp(Coin::Up, 1) = 1.0;
        state = step(state, config);
        CHECK(std::abs(state.amp(Coin::Up, 2) - cplx(1.0, 0.0)) < 1e-16);
    }
}

TEST_CASE("evolution basics") {
    SUBCASE("t = 0 returns the input") {
        const WalkConfig config = make_config(pi / 4.0, 0.3, 5);
        WalkerState state = make_origin_state(config.half_width, coin_symmetric());
        WalkerState out = evolve(state, config, 0);
        CHECK(max_abs_diff(out, state) == 0.0);
    }
    SUBCASE("variance grows ballistically for any phi") {
        for (double phi : {0.0, 0.4 * pi, pi}) {
            const WalkConfig config = make_config(pi / 4.0, phi, 200);
            const auto var_at = [&](int t) {
                WalkerState s = make_origin_state(config.half_width, coin_symmetric());
                return position_distribution(evolve(std::move(s), config, t)).variance();
            };
            const double ratio = var_at(200) / var_at(100);
            CHECK(ratio == doctest::Approx(4.0).epsilon(0.10));
        }
    }
    SUBCASE("norm drift check trips on a corrupted state") {
        const WalkConfig config = make_config(pi / 4.0, 0.0, 150);
        WalkerState state = make_origin_state(config.half_width, coin_symmetric());
        for (cplx& a : state.amps) a *= 1.0 + 1e-8;
        CHECK_THROWS_AS(evolve(std::move(state), config, 100), numerics_error);
    }
}

TEST_CASE("position distribution") {
    SUBCASE("delta for the initial state") {
        WalkerState state = make_origin_state(4, coin_antisymmetric());
        const auto dist = position_distribution(state);
        CHECK(dist.at(0) == doctest::Approx(1.0));
        CHECK(dist.total() == doctest::Approx(1.0));
    }
    SUBCASE("reflection-symmetric initial states stay symmetric") {
        for (const CoinState& coin : {coin_symmetric(), coin_antisymmetric()}) {
            const WalkConfig config = make_config(pi / 4.0, 0.9, 25);
            const auto dist = position_distribution(
                evolve(make_origin_state(config.half_width, coin), config, 25));
            for (int n = 1; n <= config.half_width; ++n) {
                CHECK(dist.at(n) == doctest::Approx(dist.at(-n)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("support alternates sublattices") {
        const WalkConfig config = make_config(pi / 4.0, 1.1, 7);
        WalkerState state = make_origin_state(config.half_width, coin_symmetric());
        for (int t = 1; t <= 7; ++t) {
            step_in_place(state, config);
            const auto dist = position_distribution(state);
            for (int n = -config.half_width; n <= config.half_width; ++n) {
                if (((n - t) & 1) != 0) CHECK(dist.at(n) == 0.0);
            }
        }
    }
}

TEST_CASE("symmetry operators") {
    std::mt19937_64 rng(7);

    SUBCASE("closed forms") {
        WalkerState state(2);
        state.amp(Coin::Up, 1) = 1.0;
        apply_sublattice(state);
        CHECK(std::abs(state.amp(Coin::Up, 1) - cplx(-1.0, 0.0)) < 1e-16);

        WalkerState origin = make_origin_state(2, CoinState{1.0, 0.0});
        apply_sublattice(origin);
        CHECK(std::abs(origin.amp(Coin::Up, 0) - cplx(1.0, 0.0)) < 1e-16);

        WalkerState up(2);
        up.amp(Coin::Up, 2) = 1.0;
        apply_reflection(up);
        CHECK(std::abs(up.amp(Coin::Down, -2) - cplx(1.0, 0.0)) < 1e-16);
    }
    SUBCASE("both are involutions") {
        for (int rep = 0; rep < 20; ++rep) {
            WalkerState state = random_state(6, rng);
            WalkerState twice = state;
            apply_sublattice(twice);
            apply_sublattice(twice);
            CHECK(max_abs_diff(twice, state) == 0.0);
            twice = state;
            apply_reflection(twice);
            apply_reflection(twice);
            CHECK(max_abs_diff(twice, state) == 0.0);
        }
    }
}

TEST_CASE("walk symmetry algebra") {
    std::mt19937_64 rng(11);
    WalkConfig config = make_config(0.6, 2.1, 0);
    config.half_width = 8;

    SUBCASE("unitarity") {
        for (int rep = 0; rep < 100; ++rep) {
            WalkerState state = clear_edges(random_state(6, rng));
            const double before = state.norm_squared();
            step_in_place(state, config);
            CHECK(std::abs(state.norm_squared() - before) < 1e-12);
        }
    }
    SUBCASE("sublattice anti-commutation: S W S = -W") {
        for (int rep = 0; rep < 50; ++rep) {
            WalkerState state = clear_edges(random_state(6, rng));

            WalkerState left = state;
            apply_sublattice(left);
            step_in_place(left, config);

            WalkerState right = state;
            step_in_place(right, config);
            apply_sublattice(right);
            for (cplx& a : right.amps) a = -a;
            right.time = left.time;
            CHECK(max_abs_diff(left, right) < 1e-14);
        }
    }
    SUBCASE("reflection commutes with the step") {
        for (int rep = 0; rep < 50; ++rep) {
            WalkerState state = clear_edges(random_state(6, rng));

            WalkerState left = state;
            apply_reflection(left);
            step_in_place(left, config);

            WalkerState right = state;
            step_in_place(right, config);
            apply_reflection(right);
            CHECK(max_abs_diff(left, right) < 1e-14);
        }
    }
    SUBCASE("even support moves to odd support and back") {
        WalkerState state(8);
        state.amp(Coin::Up, 0) = 0.6;
        state.amp(Coin::Down, 2) = 0.8;
        step_in_place(state, config);
        for (int n = -8; n <= 8; n += 2) {
            CHECK(std::abs(state.amp(Coin::Up, n)) == 0.0);
            CHECK(std::abs(state.amp(Coin::Down, n)) == 0.0);
        }
        step_in_place(state, config);
        for (int n = -7; n <= 7; n += 2) {
            CHECK(std::abs(state.amp(Coin::Up, n)) == 0.0);
            CHECK(std::abs(state.amp(Coin::Down, n)) == 0.0);
        }
    }
}

TEST_CASE("phi = 0 matches an independent standard-walk implementation") {
    const double theta = pi / 4.0;
    const CoinState coin = CoinState::from_angles(0.8, 1.9);
    const int steps = 30;

    const WalkConfig config = make_config(theta, 0.0, steps);
    const WalkerState state =
        evolve(make_origin_state(config.half_width, coin), config, steps);
    const auto reference = reference_standard_walk(theta, coin, steps);

    for (int n = -steps; n <= steps; ++n) {
        for (int c = 0; c < 2; ++c) {
            cplx expected(0.0, 0.0);
            if (auto it = reference.find({c, n}); it != reference.end()) {
                expected = it->second;
            }
            CHECK(std::abs(state.amp(static_cast<Coin>(c), n) - expected) < 1e-13);
        }
    }
}

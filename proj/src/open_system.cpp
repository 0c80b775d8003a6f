#include "qwalk/open_system.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

std::array<double, 3> bloch_of_angles(double gamma, double eta) {
    return {std::sin(gamma) * std::cos(eta), std::sin(gamma) * std::sin(eta),
            std::cos(gamma)};
}

double blp_from_distances(const std::vector<double>& d, int t_max) {
    double acc = 0.0;
    for (int t = 1; t <= t_max; ++t) {
        const double inc = d[t] - d[t - 1];
        if (inc > 0.0) acc += inc;
    }
    return acc;
}

}  // namespace

std::array<double, 3> CoinDensityMatrix::bloch() const {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
            rho(0, 0).real() - rho(1, 1).real()};
}

CoinDensityMatrix CoinDensityMatrix::from_bloch(const std::array<double, 3>& r) {
    CoinDensityMatrix out;
    out.rho << cplx(0.5 * (1.0 + r[2]), 0.0), cplx(0.5 * r[0], -0.5 * r[1]),
               cplx(0.5 * r[0], 0.5 * r[1]), cplx(0.5 * (1.0 - r[2]), 0.0);
    return out;
}

CoinDensityMatrix reduced_coin(const WalkerState& state) {
    const int N = state.site_count();
    const cplx* up = state.amps.data();
    const cplx* down = up + N;
    double puu = 0.0, pdd = 0.0;
    cplx pud(0.0, 0.0);
    for (int i = 0; i < N; ++i) {
        puu += std::norm(up[i]);
        pdd += std::norm(down[i]);
        pud += up[i] * std::conj(down[i]);
    }
    CoinDensityMatrix out;
    out.rho << cplx(puu, 0.0), pud, std::conj(pud), cplx(pdd, 0.0);
    return out;
}

double trace_distance(const CoinDensityMatrix& a, const CoinDensityMatrix& b) {
    // Eigenvalues of the Hermitian difference [[x, w], [w*, y]] are
    // (x+y)/2 +- sqrt(((x-y)/2)^2 + |w|^2).
    const double x = a.rho(0, 0).real() - b.rho(0, 0).real();
    const double y = a.rho(1, 1).real() - b.rho(1, 1).real();
    const cplx w = a.rho(0, 1) - b.rho(0, 1);
    const double mid = 0.5 * (x + y);
    const double rad = std::sqrt(0.25 * (x - y) * (x - y) + std::norm(w));
    return 0.5 * (std::abs(mid + rad) + std::abs(mid - rad));
}

double accumulate_positive_increments(const std::vector<double>& series) {
    double acc = 0.0;
    for (std::size_t t = 1; t < series.size(); ++t) {
        const double inc = series[t] - series[t - 1];
        if (inc > 0.0) acc += inc;
    }
    return acc;
}

ReducedCoinPropagator::ReducedCoinPropagator(double theta, double phi, int t_max) {
    const WalkConfig config = make_config(theta, phi, t_max);

    // Basis initial coins: Bloch +z, -z, +x, +y.
    const std::array<CoinState, 4> basis = {
        CoinState{1.0, 0.0}, CoinState{0.0, 1.0},
        CoinState::from_angles(pi / 2.0, 0.0),
        CoinState::from_angles(pi / 2.0, pi / 2.0)};

    std::array<std::vector<std::array<double, 3>>, 4> tracks;
    for (int b = 0; b < 4; ++b) {
        auto& track = tracks[b];
        track.reserve(t_max + 1);
        WalkerState state = make_origin_state(config.half_width, basis[b]);
        track.push_back(reduced_coin(state).bloch());
        evolve(std::move(state), config, t_max, [&track](const WalkerState& s) {
            track.push_back(reduced_coin(s).bloch());
        });
    }

    linear_.resize(t_max + 1);
    offset_.resize(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
        const Eigen::Vector3d rzp(tracks[0][t].data());
        const Eigen::Vector3d rzm(tracks[1][t].data());
        const Eigen::Vector3d rxp(tracks[2][t].data());
        const Eigen::Vector3d ryp(tracks[3][t].data());
        offset_[t] = 0.5 * (rzp + rzm);
        linear_[t].col(0) = rxp - offset_[t];
        linear_[t].col(1) = ryp - offset_[t];
        linear_[t].col(2) = rzp - offset_[t];
    }
}

std::array<double, 3> ReducedCoinPropagator::bloch_at(
    int t, const std::array<double, 3>& u) const {
    const Eigen::Vector3d r = offset_[t] + linear_[t] * Eigen::Vector3d(u.data());
    return {r(0), r(1), r(2)};
}

double ReducedCoinPropagator::pair_distance(int t, const std::array<double, 3>& u) const {
    return (linear_[t] * Eigen::Vector3d(u.data())).norm();
}

std::vector<double> trace_distance_series_direct(double theta, double phi,
                                                 int t_max, const CoinState& coin) {
    const WalkConfig config = make_config(theta, phi, t_max);
    WalkerState a = make_origin_state(config.half_width, coin);
    WalkerState b = make_origin_state(config.half_width, coin.antipode());
    std::vector<double> d;
    d.reserve(t_max + 1);
    d.push_back(trace_distance(reduced_coin(a), reduced_coin(b)));
    for (int t = 1; t <= t_max; ++t) {
        step_in_place(a, config);
        step_in_place(b, config);
        d.push_back(trace_distance(reduced_coin(a), reduced_coin(b)));
    }
    return d;
}

BlpResult blp_measure(double theta, double phi, int t_max, const BlpOptions& options) {
    const ReducedCoinPropagator prop(theta, phi, t_max);

    std::vector<int> checkpoints = options.checkpoints;
    if (checkpoints.empty()) checkpoints.push_back(t_max);
    for (int t : checkpoints) {
        if (t < 1 || t > t_max) throw std::invalid_argument("checkpoint outside [1, t_max]");
    }

    const int ng = options.grid_gamma;
    const int ne = options.grid_eta;
    const int n_checks = static_cast<int>(checkpoints.size());

    // Accumulated measure per pair at each checkpoint, grid laid out by index.
    auto eval_pair = [&](double gamma, double eta, std::vector<double>& out) {
        const auto u = bloch_of_angles(gamma, eta);
        double acc = 0.0;
        double prev = prop.pair_distance(0, u);
        int next_check = 0;
        for (int t = 1; t <= t_max && next_check < n_checks; ++t) {
            const double d = prop.pair_distance(t, u);
            const double inc = d - prev;
            if (inc > 0.0) acc += inc;
            prev = d;
            while (next_check < n_checks && checkpoints[next_check] == t) {
                out[next_check] = acc;
                ++next_check;
            }
        }
    };

    std::vector<std::vector<double>> grid_measures(
        static_cast<std::size_t>(ng) * ne, std::vector<double>(n_checks, 0.0));
    parallel_for(static_cast<std::size_t>(ng) * ne, options.jobs, [&](std::size_t idx) {
        const int gi = static_cast<int>(idx) / ne;
        const int ei = static_cast<int>(idx) % ne;
        const double gamma = gi * pi / (ng - 1);
        const double eta = ei * two_pi / ne;
        eval_pair(gamma, eta, grid_measures[idx]);
    });

    BlpResult result;
    result.checkpoints = checkpoints;
    result.best.resize(n_checks);
    result.refined.resize(n_checks);
    for (int c = 0; c < n_checks; ++c) {
        std::size_t best_idx = 0;
        for (std::size_t idx = 1; idx < grid_measures.size(); ++idx) {
            if (grid_measures[idx][c] > grid_measures[best_idx][c]) best_idx = idx;
        }
        const int gi = static_cast<int>(best_idx) / ne;
        const int ei = static_cast<int>(best_idx) % ne;
        result.best[c] = {gi * pi / (ng - 1), ei * two_pi / ne,
                          grid_measures[best_idx][c]};
        result.refined[c] = result.best[c];

        if (options.refine) {
            // 8x8 sub-grid over the +-1-cell neighbourhood of the winner.
            const double dg = pi / (ng - 1);
            const double de = two_pi / ne;
            const double g0 = std::max(0.0, result.best[c].gamma - dg);
            const double g1 = std::min(pi, result.best[c].gamma + dg);
            std::vector<std::vector<double>> fine(64, std::vector<double>(n_checks, 0.0));
            std::vector<std::array<double, 2>> fine_angles(64);
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    fine_angles[i * 8 + j] = {g0 + (g1 - g0) * i / 7.0,
                                              result.best[c].eta + de * (j - 3.5) / 4.0};
                }
            }
            parallel_for(std::size_t{64}, options.jobs, [&](std::size_t idx) {
                eval_pair(fine_angles[idx][0], fine_angles[idx][1], fine[idx]);
            });
            for (std::size_t idx = 0; idx < fine.size(); ++idx) {
                if (fine[idx][c] > result.refined[c].measure) {
                    result.refined[c] = {fine_angles[idx][0], fine_angles[idx][1],
                                         fine[idx][c]};
                }
            }
        }
    }

    // Distance series of the final-checkpoint winner.
    const auto u = bloch_of_angles(result.refined.back().gamma, result.refined.back().eta);
    result.best_distance_series.resize(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
        result.best_distance_series[t] = prop.pair_distance(t, u);
    }
    return result;
}

BlochTimeAverage mean_bloch_x(double theta, double phi, const CoinState& initial,
                              int t_from, int t_to) {
    if (t_from < 0 || t_to <= t_from) throw std::invalid_argument("bad averaging window");
    const WalkConfig config = make_config(theta, phi, t_to);
    WalkerState state = make_origin_state(config.half_width, initial);

    BlochTimeAverage avg;
    int n_even = 0, n_odd = 0;
    evolve(std::move(state), config, t_to, [&](const WalkerState& s) {
        if (s.time <= t_from) return;
        const double rx = reduced_coin(s).bloch()[0];
        avg.mean += rx;
        if (s.time % 2 == 0) {
            avg.even_mean += rx;
            ++n_even;
        } else {
            avg.odd_mean += rx;
            ++n_odd;
        }
    });
    avg.mean /= (n_even + n_odd);
    if (n_even) avg.even_mean /= n_even;
    if (n_odd) avg.odd_mean /= n_odd;
    return avg;
}

CoinAncillaState make_bell_origin_state(int L, BellBasis basis) {
    CoinAncillaState state;
    state.branch_up = WalkerState(L);
    state.branch_down = WalkerState(L);
    if (basis == BellBasis::SigmaX) {
        // (|left>|down> + |right>|up>) / sqrt(2) with right/left the
        // sigma_x eigenstates of the coin.
        state.branch_up.amp(Coin::Up, 0) = 0.5;
        state.branch_up.amp(Coin::Down, 0) = 0.5;
        state.branch_down.amp(Coin::Up, 0) = 0.5;
        state.branch_down.amp(Coin::Down, 0) = -0.5;
    } else {
        const double r = 1.0 / std::sqrt(2.0);
        state.branch_up.amp(Coin::Up, 0) = r;
        state.branch_down.amp(Coin::Down, 0) = r;
    }
    return state;
}

void step_in_place(CoinAncillaState& state, const WalkConfig& config) {
    step_in_place(state.branch_up, config);
    step_in_place(state.branch_down, config);
    ++state.time;
}

Eigen::Matrix4cd reduced_coin_ancilla(const CoinAncillaState& state) {
    const WalkerState* branches[2] = {&state.branch_up, &state.branch_down};
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const int N = state.branch_up.site_count();
    for (int row = 0; row < 4; ++row) {
        const cplx* x = branches[row % 2]->amps.data() + (row / 2) * N;
        for (int col = row; col < 4; ++col) {
            const cplx* y = branches[col % 2]->amps.data() + (col / 2) * N;
            cplx acc(0.0, 0.0);
            for (int i = 0; i < N; ++i) acc += x[i] * std::conj(y[i]);
            rho(row, col) = acc;
            rho(col, row) = std::conj(acc);
        }
    }
    return rho;
}

std::vector<Eigen::Matrix4cd> evolve_with_ancilla(double theta, double phi, int t_max,
                                                  BellBasis basis) {
    const WalkConfig config = make_config(theta, phi, t_max);
    CoinAncillaState state = make_bell_origin_state(config.half_width, basis);
    std::vector<Eigen::Matrix4cd> rhos;
    rhos.reserve(t_max + 1);
    rhos.push_back(reduced_coin_ancilla(state));
    for (int t = 1; t <= t_max; ++t) {
        step_in_place(state, config);
        if (t % 100 == 0 && std::abs(state.norm_squared() - 1.0) > 1e-9) {
            throw numerics_error("coin-ancilla norm drift exceeded 1e-9");
        }
        rhos.push_back(reduced_coin_ancilla(state));
    }
    return rhos;
}

double concurrence(const Eigen::Matrix4cd& rho) {
    // Spin-flip (sigma_y x sigma_y) in the |cc aa> product basis.
    static const Eigen::Matrix4cd yy = [] {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_eig(rho);
    if (rho_eig.info() != Eigen::Success) {
        throw numerics_error("concurrence eigensolve failed");
    }
    Eigen::Vector4d vals = rho_eig.eigenvalues();
    for (int i = 0; i < 4; ++i) vals(i) = std::sqrt(std::max(0.0, vals(i)));
    const Eigen::Matrix4cd sqrt_rho = rho_eig.eigenvectors() * vals.asDiagonal() *
                                      rho_eig.eigenvectors().adjoint();

    const Eigen::Matrix4cd flipped = yy * rho.conjugate() * yy;
    const Eigen::Matrix4cd m = sqrt_rho * flipped * sqrt_rho;  // Hermitian PSD
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> m_eig(m);
    if (m_eig.info() != Eigen::Success) {
        throw numerics_error("concurrence eigensolve failed");
    }
    Eigen::Vector4d mu = m_eig.eigenvalues();  // ascending
    for (int i = 0; i < 4; ++i) mu(i) = std::sqrt(std::max(0.0, mu(i)));
    return std::max(0.0, mu(3) - mu(2) - mu(1) - mu(0));
}

RhpResult rhp_measure(double theta, double phi, int t_max,
                      std::vector<int> checkpoints, BellBasis basis) {
    if (checkpoints.empty()) checkpoints.push_back(t_max);
    for (int t : checkpoints) {
        if (t < 1 || t > t_max) throw std::invalid_argument("checkpoint outside [1, t_max]");
    }

    RhpResult result;
    result.checkpoints = checkpoints;
    result.measure.assign(checkpoints.size(), 0.0);

    const WalkConfig config = make_config(theta, phi, t_max);
    CoinAncillaState state = make_bell_origin_state(config.half_width, basis);
    result.concurrence_series.reserve(t_max + 1);
    result.concurrence_series.push_back(concurrence(reduced_coin_ancilla(state)));

    double acc = 0.0;
    for (int t = 1; t <= t_max; ++t) {
        step_in_place(state, config);
        const double c = concurrence(reduced_coin_ancilla(state));
        const double inc = c - result.concurrence_series.back();
        if (inc > 0.0) acc += inc;
        result.concurrence_series.push_back(c);
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            if (checkpoints[i] == t) result.measure[i] = acc;
        }
    }
    return result;
}

}  // namespace qwalk

#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk_core.hpp"

namespace qwalk {

// 2x2 reduced coin state, kept both as a matrix and as its Bloch vector
// rho = (I + r . sigma) / 2.
struct CoinDensityMatrix {
    Eigen::Matrix2cd rho;

    std::array<double, 3> bloch() const;
    static CoinDensityMatrix from_bloch(const std::array<double, 3>& r);
};

// Partial trace over position.
CoinDensityMatrix reduced_coin(const WalkerState& state);

// Half trace norm of the difference, in [0, 1]; closed-form 2x2 eigenvalues,
// no general eigensolver involved.
double trace_distance(const CoinDensityMatrix& a, const CoinDensityMatrix& b);

// Sum of the positive increments of a scalar time series (the discrete
// non-Markovianity accumulation underlying both measures here).
double accumulate_positive_increments(const std::vector<double>& series);

// Affine map of the reduced coin dynamics: the Bloch vector of the coin
// after t steps, for an initial pure coin u at the origin, is
// r(t) = offset[t] + linear[t] * u. Built once from four basis evolutions;
// every initial-pair trace-distance series then follows without further
// walks. For an antipodal pair the offsets cancel: D_t = |linear[t] u|.
class ReducedCoinPropagator {
public:
    ReducedCoinPropagator(double theta, double phi, int t_max);

    int t_max() const { return static_cast<int>(linear_.size()) - 1; }

    std::array<double, 3> bloch_at(int t, const std::array<double, 3>& u) const;

    // Trace distance at step t between the evolved pair starting from the
    // orthogonal coins with Bloch vectors +-u.
    double pair_distance(int t, const std::array<double, 3>& u) const;

private:
    std::vector<Eigen::Matrix3d> linear_;
    std::vector<Eigen::Vector3d> offset_;
};

// Direct-evolution reference for the propagator route: trace-distance series
// D_0..D_tmax between the walks started from `coin` and its antipode.
std::vector<double> trace_distance_series_direct(double theta, double phi,
                                                 int t_max, const CoinState& coin);

struct BlpOptions {
    int grid_gamma = 64;
    int grid_eta = 64;
    bool refine = true;      // one 8x8 pass around the best coarse cell
    int jobs = 0;            // 0: OpenMP default, 1: serial reference path
    std::vector<int> checkpoints;  // defaults to {t_max}
};

struct BlpPairValue {
    double gamma = 0.0;
    double eta = 0.0;
    double measure = 0.0;
};

struct BlpResult {
    std::vector<int> checkpoints;
    std::vector<BlpPairValue> best;      // per checkpoint, coarse grid argmax
    std::vector<BlpPairValue> refined;   // per checkpoint, after refinement
    std::vector<double> best_distance_series;  // D_t of the last-checkpoint winner
};

// Discrete trace-distance non-Markovianity measure maximized over antipodal
// initial coin pairs on a (gamma, eta) grid.
BlpResult blp_measure(double theta, double phi, int t_max,
                      const BlpOptions& options = {});

struct BlochTimeAverage {
    double mean = 0.0;       // over the full window
    double even_mean = 0.0;  // even steps only
    double odd_mean = 0.0;
};

// Time-averaged Bloch x-component of the reduced coin over steps
// (t_from, t_to], split by step parity to expose the period-2 oscillation.
BlochTimeAverage mean_bloch_x(double theta, double phi, const CoinState& initial,
                              int t_from, int t_to);

// Walker with a static two-level ancilla: one positional amplitude field per
// ancilla basis state. The walk acts on coin x position only.
struct CoinAncillaState {
    WalkerState branch_up;    // ancilla |up>
    WalkerState branch_down;  // ancilla |down>
    int time = 0;

    double norm_squared() const {
        return branch_up.norm_squared() + branch_down.norm_squared();
    }
};

enum class BellBasis { SigmaX, SigmaZ };

// Maximally entangled coin-ancilla state at the origin. SigmaX pairs the
// sigma_x coin eigenstates with the ancilla basis; SigmaZ is the plain
// (|uu> + |dd>)/sqrt(2) alternative.
CoinAncillaState make_bell_origin_state(int L, BellBasis basis = BellBasis::SigmaX);

void step_in_place(CoinAncillaState& state, const WalkConfig& config);

// Reduced coin-ancilla state: partial trace over position, basis order
// |coin, ancilla> = {uu, ud, du, dd}.
Eigen::Matrix4cd reduced_coin_ancilla(const CoinAncillaState& state);

// Per-step reduced 4x4 density matrices rho(0..t_max) of the Bell state
// evolved under the walk.
std::vector<Eigen::Matrix4cd> evolve_with_ancilla(double theta, double phi, int t_max,
                                                  BellBasis basis = BellBasis::SigmaX);

// Two-qubit concurrence max(0, mu1 - mu2 - mu3 - mu4) where mu_i are the
// descending singular values of the spin-flipped overlap, computed through
// the Hermitian form sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho).
double concurrence(const Eigen::Matrix4cd& rho);

struct RhpResult {
    std::vector<double> concurrence_series;  // index t
    std::vector<int> checkpoints;
    std::vector<double> measure;  // accumulated positive increments per checkpoint
};

// Entanglement-based non-Markovianity measure: positive concurrence
// increments of the evolved coin-ancilla Bell state.
RhpResult rhp_measure(double theta, double phi, int t_max,
                      std::vector<int> checkpoints = {},
                      BellBasis basis = BellBasis::SigmaX);

}  // namespace qwalk

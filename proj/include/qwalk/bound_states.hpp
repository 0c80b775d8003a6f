#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk_core.hpp"

namespace qwalk {

// 2x2 transfer matrix relating adjacent stationary-state coefficient pairs
// (alpha_{n+1}, beta_n) = T(phi_n) (alpha_n, beta_{n-1}). det T = 1 and
// sigma_x T sigma_x = T^{-1}.
Eigen::Matrix2cd transfer_matrix(double theta, double energy, double phi_site);

// The real transfer eigenvalue with |lambda| <= 1 (the decaying branch).
// Requires sin^2(theta) >= sin^2(energy); throws std::domain_error for
// extended states. For quasi-energies in the gap around 0 this is
// (cos E - sqrt(sin^2 theta - sin^2 E)) / cos theta; around pi the sign of
// the square root flips so that the returned value stays sub-unit.
double transfer_eigenvalue(double theta, double energy);

// Inverse localisation length -ln|lambda|, positive for bound states.
double inverse_localisation_length(double lambda);

// An impurity-localised stationary state of the one-step walk operator.
struct BoundState {
    int parity = +1;          // reflection eigenvalue +-1
    double energy = 0.0;      // quasi-energy in (-pi, pi]
    double lambda = 0.0;      // transfer eigenvalue, |lambda| < 1
    cplx seed_alpha1;         // amplitude (up, site 1)
    cplx seed_beta0;          // amplitude (down, site 0)
    double norm_const = 0.0;  // |C|^2 such that the state is normalized
    double sublattice_partner_energy = 0.0;  // energy + pi folded to (-pi, pi]
};

// All bound states of the walk with coin angle theta in (0, pi/2) and
// impurity phase phi (taken mod 2 pi). Returns 0, 2 or 4 states: for each
// supported reflection parity, one state in the gap around quasi-energy 0
// and its sublattice partner shifted by pi. The reflection symmetric branch
// exists for phi in (0, 2 pi - 2 theta), the anti-symmetric branch for
// phi in (2 theta, 2 pi).
std::vector<BoundState> solve_bound_states(double theta, double phi);

// Sum of -ln|lambda| over all bound states (both sublattice partners count).
double effective_inverse_localisation_length(double theta, double phi);

// The full wavefunction of a bound state on sites [-n_max, n_max],
// normalized; throws std::invalid_argument when the truncated tail would
// carry more than 1e-10 of the norm.
WalkerState bound_state_amplitudes(const BoundState& bound, int n_max);

// Bloch x-component of the reduced coin state of a bound state (the y and z
// components vanish). Closed form parity*(1-lambda^2)/2 + lambda*sinE/sinTheta,
// which both sublattice partners share.
double bound_rx(const BoundState& bound, double theta);

// Squared projection of the initial state |coin(gamma,eta)> x |0> onto the
// bound subspace. An absent parity contributes with lambda^2 = 1 so the
// expression vanishes continuously at the existence boundaries.
double bound_overlap(double gamma, double eta, double theta, double phi);

// Long-time mean site occupation of the bound component, averaged over an
// orthogonal pair of initial coins. Index n + n_max; the value at site n is
// the envelope attained at steps of matching parity (even sites at even
// steps, odd at odd), so any instantaneous distribution occupies one
// sublattice and sums to the mean bound weight.
std::vector<double> analytic_mean_distribution(double theta, double phi, int n_max);

// Mean origin occupation [(1-l+^2)^2 + (1-l-^2)^2] / 2 at even steps.
double analytic_mean_origin(double theta, double phi);

// Participation ratio of the even-sublattice envelope (the sublattice the
// averaged walk occupies at even steps).
double analytic_participation_ratio(double theta, double phi);

}  // namespace qwalk

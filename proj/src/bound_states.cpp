#include "qwalk/bound_states.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kValidityTol = 1e-9;

double fold_to_principal(double e) {
    e = std::remainder(e, two_pi);  // (-pi, pi] up to the -pi endpoint
    if (e <= -pi) e = pi;
    return e;
}

// Squared-projection weights of the two reflection parities for the initial
// coin (gamma, eta): (1 - lambda^2) (1 +- sin(gamma) cos(eta)) / 2 per parity,
// with lambda^2 := 1 for an absent parity.
std::array<double, 2> parity_lambda_squared(double theta, double phi) {
    std::array<double, 2> lam2{1.0, 1.0};
    for (const BoundState& b : solve_bound_states(theta, phi)) {
        lam2[b.parity > 0 ? 0 : 1] = b.lambda * b.lambda;
    }
    return lam2;
}

}  // namespace

Eigen::Matrix2cd transfer_matrix(double theta, double energy, double phi_site) {
    const double c = std::cos(theta);
    if (std::abs(c) < 1e-12) {
        throw std::domain_error("transfer matrix is singular at theta = pi/2");
    }
    const double sec = 1.0 / c;
    const double tan = std::tan(theta);
    Eigen::Matrix2cd m;
    m << std::polar(sec, energy + phi_site), cplx(0.0, -tan),
         cplx(0.0, tan), std::polar(sec, -(energy + phi_site));
    return m;
}

double transfer_eigenvalue(double theta, double energy) {
    const double st = std::sin(theta);
    const double se = std::sin(energy);
    const double disc = st * st - se * se;
    if (disc < 0.0) {
        throw std::domain_error("extended state: sin^2(theta) < sin^2(E)");
    }
    const double ce = std::cos(energy);
    const double root = (ce >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc);
    return (ce - root) / std::cos(theta);
}

double inverse_localisation_length(double lambda) {
    const double mag = std::abs(lambda);
    if (mag <= 0.0 || mag >= 1.0) {
        throw std::domain_error("localisation length needs 0 < |lambda| < 1");
    }
    return -std::log(mag);
}

std::vector<BoundState> solve_bound_states(double theta, double phi) {
    if (!(theta > 0.0) || !(theta < pi / 2.0)) {
        throw std::domain_error("bound-state solver needs theta in (0, pi/2)");
    }
    phi = phi - two_pi * std::floor(phi / two_pi);

    const double st = std::sin(theta);
    std::vector<BoundState> states;

    for (int parity : {+1, -1}) {
        // cot(E) = parity * (1 - sin(theta -+ phi) sin(theta))
        //                 / (sin(theta) cos(theta -+ phi));
        // atan2 below resolves the cot branch, then the candidate is folded
        // into the gap around 0. The partner branch around pi follows by the
        // sublattice shift.
        const double a = theta - parity * phi;
        const double num = parity * (1.0 - std::sin(a) * st);
        const double den = st * std::cos(a);
        double energy = std::atan2(den, num);
        if (energy > pi / 2.0) energy -= pi;
        if (energy <= -pi / 2.0) energy += pi;

        if (std::abs(energy) >= theta) continue;  // outside the gap

        const double se = std::sin(energy);
        const double disc = st * st - se * se;
        if (disc <= 0.0) continue;
        const double root = std::sqrt(disc);

        // Solutions of the quasi-energy equation are genuine only when the
        // two transfer-eigenvector forms coincide.
        const double lhs = std::sin(energy + phi - parity * theta);
        const double rhs = parity * root / st;
        if (std::abs(lhs - rhs) > kValidityTol) continue;

        const double lambda = (std::cos(energy) - root) / std::cos(theta);
        if (!(std::abs(lambda) < 1.0)) continue;

        // Normalization making the geometric tail sum close to one; the
        // overall phase is fixed by a real positive seed alpha_1.
        const double norm_const = (1.0 - lambda * lambda) / (4.0 * st * st);
        const double c_amp = std::sqrt(norm_const);

        BoundState in_gap;
        in_gap.parity = parity;
        in_gap.energy = energy;
        in_gap.lambda = lambda;
        in_gap.seed_alpha1 = cplx(c_amp * st, 0.0);
        in_gap.seed_beta0 = c_amp * cplx(se, -root);
        in_gap.norm_const = norm_const;
        in_gap.sublattice_partner_energy = fold_to_principal(energy + pi);

        // Sublattice partner: site n picks up (-1)^n, so the seed maps to
        // (-alpha_1, beta_0); the global phase is flipped to keep alpha_1
        // real positive.
        BoundState partner = in_gap;
        partner.energy = in_gap.sublattice_partner_energy;
        partner.sublattice_partner_energy = in_gap.energy;
        partner.lambda = -lambda;
        partner.seed_beta0 = -in_gap.seed_beta0;

        states.push_back(in_gap);
        states.push_back(partner);
    }
    return states;
}

double effective_inverse_localisation_length(double theta, double phi) {
    double sum = 0.0;
    for (const BoundState& b : solve_bound_states(theta, phi)) {
        sum += inverse_localisation_length(b.lambda);
    }
    return sum;
}

WalkerState bound_state_amplitudes(const BoundState& bound, int n_max) {
    const double lam = std::abs(bound.lambda);
    // Tail norm beyond n_max is O(lambda^{2 n_max}); require it below 1e-10.
    if (n_max < 1 || std::pow(lam, 2 * n_max) > 1e-10) {
        throw std::invalid_argument("n_max too small for 1e-10 truncation");
    }

    WalkerState state(n_max);
    const double p = bound.parity;
    state.amp(Coin::Up, 0) = p * bound.seed_beta0;
    state.amp(Coin::Down, 0) = bound.seed_beta0;
    cplx lam_pow = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        const cplx alpha_n = lam_pow * bound.seed_alpha1;       // lambda^{n-1}
        const cplx beta_n = lam_pow * bound.lambda * bound.seed_beta0;
        state.amp(Coin::Up, n) = alpha_n;
        state.amp(Coin::Down, n) = beta_n;
        state.amp(Coin::Up, -n) = p * beta_n;
        state.amp(Coin::Down, -n) = p * alpha_n;
        lam_pow *= bound.lambda;
    }

    // Remove the truncation-induced norm deficit (at most 1e-10).
    const double norm = std::sqrt(state.norm_squared());
    for (cplx& a : state.amps) a /= norm;
    return state;
}

double bound_rx(const BoundState& bound, double theta) {
    return bound.parity * (1.0 - bound.lambda * bound.lambda) / 2.0 +
           bound.lambda * std::sin(bound.energy) / std::sin(theta);
}

double bound_overlap(double gamma, double eta, double theta, double phi) {
    const auto lam2 = parity_lambda_squared(theta, phi);
    const double s = std::sin(gamma) * std::cos(eta);
    return ((2.0 - lam2[0] - lam2[1]) - (lam2[0] - lam2[1]) * s) / 2.0;
}

std::vector<double> analytic_mean_distribution(double theta, double phi, int n_max) {
    const auto lam2 = parity_lambda_squared(theta, phi);
    std::vector<double> mean(2 * n_max + 1, 0.0);
    for (double l2 : lam2) {
        const double w = 1.0 - l2;
        mean[n_max] += w * w / 2.0;
        double tail = 1.0;  // lambda^{2(|n|-1)}
        for (int n = 1; n <= n_max; ++n) {
            const double v = tail * (1.0 + l2) * w * w / 4.0;
            mean[n_max + n] += v;
            mean[n_max - n] += v;
            tail *= l2;
        }
    }
    return mean;
}

double analytic_mean_origin(double theta, double phi) {
    const auto lam2 = parity_lambda_squared(theta, phi);
    const double wp = 1.0 - lam2[0];
    const double wm = 1.0 - lam2[1];
    return (wp * wp + wm * wm) / 2.0;
}

double analytic_participation_ratio(double theta, double phi) {
    const auto lam2 = parity_lambda_squared(theta, phi);
    // Sum of envelope^2 over even sites; tails are geometric in lambda^4.
    double p0 = 0.0;
    for (double l2 : lam2) {
        const double w = 1.0 - l2;
        p0 += w * w / 2.0;
    }
    double pr = p0 * p0;
    for (int n = 2; n <= 4096; n += 2) {
        double pn = 0.0;
        for (double l2 : lam2) {
            const double w = 1.0 - l2;
            pn += std::pow(l2, n - 1) * (1.0 + l2) * w * w / 4.0;
        }
        pr += pn * pn;
        if (pn * pn < 1e-18 * pr) break;
    }
    return pr;
}

}  // namespace qwalk

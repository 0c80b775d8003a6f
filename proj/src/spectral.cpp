#include "qwalk/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qwalk {

std::array<double, 2> dispersion(double theta, double k) {
    const double c = std::cos(theta) * std::cos(k);
    return {std::acos(c), std::acos(-c)};
}

std::array<double, 3> ideal_coin_bloch(double theta, double k) {
    const double energy = std::acos(std::cos(theta) * std::cos(k));
    const double se = std::sin(energy);
    if (std::abs(se) < 1e-12) {
        throw std::domain_error("degenerate band energy: sin E = 0");
    }
    const double st = std::sin(theta);
    return {std::cos(k) * st / se, -std::sin(k) * st / se,
            -std::sin(k) * std::cos(theta) / se};
}

QuasiEnergySpectrum diagonalize_ring(double theta, double phi, int ring_size) {
    if (ring_size < 3) {
        throw std::invalid_argument("ring needs at least 3 sites");
    }
    const int N = ring_size;
    const int dim = 2 * N;
    const int origin = N / 2;

    // Column for |c, i>: impurity phase at the origin site, coin mix, then
    // the conditional shift with wraparound.
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
    const double c = std::cos(theta);
    const cplx ms(0.0, -std::sin(theta));
    for (int i = 0; i < N; ++i) {
        const cplx f = (i == origin) ? std::polar(1.0, phi) : cplx(1.0, 0.0);
        const int right = (i + 1) % N;
        const int left = (i + N - 1) % N;
        w(right, i) = f * c;           // up -> up, moved right
        w(N + left, i) = f * ms;       // up -> down, moved left
        w(right, N + i) = f * ms;      // down -> up, moved right
        w(N + left, N + i) = f * c;    // down -> down, moved left
    }

    // W is unitary, so its Hermitian and anti-Hermitian parts commute:
    // A = (W + W^+)/2 carries cos E, B = (W - W^+)/(2i) carries -sin E.
    // A self-adjoint solve plus a block rotation inside each A-degenerate
    // group recovers the joint eigenbasis far faster than a general complex
    // eigensolver would.
    const Eigen::MatrixXcd a = 0.5 * (w + w.adjoint());
    const Eigen::MatrixXcd b = (w - w.adjoint()) / cplx(0.0, 2.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a_solver(a);
    if (a_solver.info() != Eigen::Success) {
        throw numerics_error("ring diagonalization did not converge");
    }
    Eigen::MatrixXcd vectors = a_solver.eigenvectors();
    const Eigen::VectorXd cos_e = a_solver.eigenvalues();

    std::vector<double> sin_e(dim);
    for (int lo = 0; lo < dim;) {
        int hi = lo + 1;
        while (hi < dim && cos_e(hi) - cos_e(hi - 1) < 1e-7) ++hi;
        const int len = hi - lo;
        const Eigen::MatrixXcd block =
            vectors.middleCols(lo, len).adjoint() * b * vectors.middleCols(lo, len);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> b_solver(block);
        if (b_solver.info() != Eigen::Success) {
            throw numerics_error("ring diagonalization did not converge");
        }
        vectors.middleCols(lo, len) =
            (vectors.middleCols(lo, len) * b_solver.eigenvectors()).eval();
        for (int i = 0; i < len; ++i) sin_e[lo + i] = -b_solver.eigenvalues()(i);
        lo = hi;
    }

    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> raw(dim);
    for (int i = 0; i < dim; ++i) {
        double e = std::atan2(sin_e[i], cos_e(i));
        if (e <= -pi) e = pi;
        raw[i] = e;
    }
    std::sort(order.begin(), order.end(),
              [&raw](int a, int b) { return raw[a] < raw[b]; });

    QuasiEnergySpectrum spec;
    spec.ring_size = N;
    spec.energies.resize(dim);
    spec.eigenvectors.resize(dim, dim);
    spec.ipr.resize(dim);
    spec.bound_candidate.resize(dim);
    for (int i = 0; i < dim; ++i) {
        const int j = order[i];
        spec.energies[i] = raw[j];
        spec.eigenvectors.col(i) = vectors.col(j);
        double ipr = 0.0;
        for (int n = 0; n < N; ++n) {
            const double pn = std::norm(spec.eigenvectors(n, i)) +
                              std::norm(spec.eigenvectors(N + n, i));
            ipr += pn * pn;
        }
        spec.ipr[i] = ipr;
        spec.bound_candidate[i] = ipr > 5.0 / N;
    }
    return spec;
}

}  // namespace qwalk

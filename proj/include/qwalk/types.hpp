#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Amplitude leaked past the lattice edge (OpenPadded shift precondition).
struct boundary_error : std::runtime_error {
    explicit boundary_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: norm drift, eigensolver non-convergence, etc.
struct numerics_error : std::runtime_error {
    explicit numerics_error(const std::string& what) : std::runtime_error(what) {}
};

// Pure coin state cos(gamma/2)|up> + e^{i eta} sin(gamma/2)|down>.
struct CoinState {
    cplx up;
    cplx down;

    static CoinState from_angles(double gamma, double eta) {
        return {std::cos(gamma / 2.0),
                std::polar(std::sin(gamma / 2.0), eta)};
    }

    // Orthogonal partner (antipodal point on the Bloch sphere).
    CoinState antipode() const { return {-std::conj(down), std::conj(up)}; }

    cplx inner(const CoinState& other) const {
        return std::conj(up) * other.up + std::conj(down) * other.down;
    }
};

// Symmetric / anti-symmetric initial coins: the sigma_x eigenstates.
inline CoinState coin_symmetric() { return CoinState::from_angles(pi / 2.0, 0.0); }
inline CoinState coin_antisymmetric() { return CoinState::from_angles(-pi / 2.0, 0.0); }

}  // namespace qwalk

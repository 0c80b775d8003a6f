#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

// Dispersion of the translation-invariant walk: the two band energies in
// [0, pi] solving cos E = +- cos(theta) cos(k). The full spectrum at
// momentum k is {+E, -E} for the first value; the second value equals the
// first band evaluated at k + pi.
std::array<double, 2> dispersion(double theta, double k);

// Bloch vector of the coin part of the standard-walk eigenstate at momentum
// k on the band E(k) = arccos(cos theta cos k). Throws std::domain_error at
// band degeneracies (sin E = 0).
std::array<double, 3> ideal_coin_bloch(double theta, double k);

struct QuasiEnergySpectrum {
    int ring_size = 0;
    std::vector<double> energies;        // 2N values sorted ascending, (-pi, pi]
    Eigen::MatrixXcd eigenvectors;       // column i <-> energies[i]; row layout
                                         // c * N + i with site n = i - N/2
    std::vector<double> ipr;             // inverse participation ratio per state
    std::vector<bool> bound_candidate;   // ipr > 5 / N

    int site_of_row(int i) const { return i - ring_size / 2; }
    int row_of(int coin, int n) const { return coin * ring_size + n + ring_size / 2; }
};

// Full diagonalization of the one-step operator on a ring of N sites with
// the impurity at site 0. Quasi-energies are -arg(eigenvalue) on the
// principal branch (-pi, pi]. Eigenstates with inverse participation ratio
// above 5/N are tagged as bound candidates.
QuasiEnergySpectrum diagonalize_ring(double theta, double phi, int ring_size);

}  // namespace qwalk

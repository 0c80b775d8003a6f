#pragma once

#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk_core.hpp"

namespace qwalk {

// Site distribution averaged over an orthogonal pair of initial coin states
// (equivalently: the evolved maximally mixed coin). p0_window_mean carries
// the origin occupation averaged over the trailing even steps, the quantity
// that tracks the analytic long-time envelope.
struct AveragedDistribution {
    std::vector<double> p_mean;  // index n + half_width, at the final step
    int half_width = 0;
    int t = 0;
    CoinState pair_first;        // second member is the antipode
    double p0_window_mean = 0.0;
    int p0_window = 0;           // number of even steps averaged

    double at(int n) const { return p_mean[n + half_width]; }
};

// Evolves both pair members for t steps. Throws std::invalid_argument when
// the pair is not orthogonal. p0_window counts trailing even steps entering
// the origin average (capped at t/2).
AveragedDistribution averaged_distribution(double theta, double phi, int t,
                                           const CoinState& first,
                                           const CoinState& second,
                                           int p0_window = 25);

// Convenience overload using the antipodal partner.
AveragedDistribution averaged_distribution(double theta, double phi, int t,
                                           const CoinState& first,
                                           int p0_window = 25);

// Sum of squared site probabilities; 1 for a delta, ~1/N for uniform.
double participation_ratio(const std::vector<double>& p);
double participation_ratio(const AveragedDistribution& dist);

double mean_origin_probability(const AveragedDistribution& dist);

}  // namespace qwalk

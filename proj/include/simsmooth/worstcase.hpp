// Adversarial two-party classical instances on a (2n^2+1) x (2n^2+1) grid:
// one subset's weight rides the center row, another the center column, the
// third a diagonal, with pairwise disjoint supports.  Smoothing any active
// subset forces removing its full eps from its own support, so the optimal
// simultaneous smoothing distance approaches |K| * eps.

#pragma once

#include "simsmooth/state.hpp"

namespace simsmooth {

struct WorstCaseParams {
    int n = 2;                       // grid scale; side length is 2n^2 + 1
    std::vector<PartySet> active;    // drawn from {A1, A2, A1A2}, equal weights

    void validate() const;
    int side() const { return 2 * n * n + 1; }
    long cells() const { return static_cast<long>(side()) * side(); }
};

// Largest grid the oracle pipeline accepts (n = 6 gives 5329 cells).
inline constexpr long kWorstCaseCellLimit = 6000;

ClassicalState build_worst_case(const WorstCaseParams& params);

// Verdict for one sweep point: the oracle distance should reach |K| * eps
// once n is large enough relative to eps.
struct ClaimVerdict {
    bool pass = false;
    double gap = 0.0;  // |K| * eps - oracle distance
};

// Requires eps < 1/|active| (beyond that the construction's dominance fails).
ClaimVerdict verify_claim_one(const WorstCaseParams& params, double eps, double oracle_distance);

// Single-system cost of smoothing a spectrum with one outlier eigenvalue
// (1-eps)/d + eps above a flat floor (1-eps)/d: returns the ratio between the
// capped level and the original peak, which decays like 1/(eps d).
double obstruction_factor(long d, double eps);

}  // namespace simsmooth

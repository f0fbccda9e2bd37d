// Min-entropy and its smoothed variants for trace and purified distance.
// All optimizations restrict candidates to the input's eigenbasis, which is
// exact for single (unconditional) systems, and allow subnormalized candidates.

#pragma once

#include <span>
#include <vector>

#include "simsmooth/spectrum.hpp"
#include "simsmooth/state.hpp"

namespace simsmooth {

// Below this floor an eigenvalue counts as 0: the smoothing function is 1 on
// the kernel, and the purified optimizer must not harvest overlap from
// rounding noise (sqrt amplifies 1e-16 junk to 1e-8).
inline constexpr double kEigenvalueFloor = 1e-14;

// -log2 of the largest eigenvalue; the zero operator gets the +inf sentinel.
struct EntropyValue {
    double bits = 0.0;
    bool infinite = false;

    static EntropyValue inf() { return {0.0, true}; }
    static EntropyValue from_lambda_max(double lambda);

    // this >= other - slack, with +inf ordered above every finite value.
    bool at_least(const EntropyValue& other, double slack = 0.0) const;
};

// Largest spectrum cap whose excess mass reaches eps: the unique lambda with
// sum_i max(0, v_i - lambda) = eps.  infinite marks eps >= total mass (cap 0).
struct CapSolution {
    double cap = 0.0;
    double removed_mass = 0.0;
    bool infinite = false;
};

EntropyValue min_entropy(const DensityOperator& t);
EntropyValue min_entropy(const ClassicalState& t);

CapSolution trace_cap_level(const Spectrum& s, double eps);
CapSolution trace_cap_level(std::span<const double> values, double eps);

// Smoothed min-entropy over the trace-distance ball of radius eps.
EntropyValue smooth_min_entropy_trace(const DensityOperator& t, double eps);
EntropyValue smooth_min_entropy_trace(std::span<const double> values, double eps);

// Smoothed min-entropy over the purified-distance ball of radius eps,
// optimized within the eigenbasis (bisection on the cap, inner mass search).
EntropyValue smooth_min_entropy_purified(const DensityOperator& t, double eps);
EntropyValue smooth_min_entropy_purified(std::span<const double> values, double eps);

// The trace-ball optimizer itself: eigenvalues capped at the solved level.
DensityOperator smoothed_state_trace(const DensityOperator& t, double eps);
ClassicalState smoothed_state_trace(const ClassicalState& t, double eps);

}  // namespace simsmooth

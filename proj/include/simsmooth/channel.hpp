// Single-Kraus smoothing channels: conjugation by the operator that scales a
// marginal's spectrum down to its trace-ball cap, extended by identity.

#pragma once

#include "simsmooth/entropy.hpp"
#include "simsmooth/state.hpp"

namespace simsmooth {

// Multiplier applied to an eigenvalue x of the source marginal; the capped
// spectrum is x * cap_multiplier(x, cap).  Entries at the eigenvalue floor
// count as kernel and keep multiplier 1.
inline double cap_multiplier(double x, double cap) {
    if (x <= kEigenvalueFloor) return 1.0;
    return std::min(1.0, cap / x);
}

struct SmoothingChannel {
    PartySet subsystem;       // parties the Kraus operator acts on
    Matrix kraus;             // sqrt of the multiplier field, on the subsystem
    double epsilon = 0.0;
    CapSolution cap;          // infinite flags eps >= marginal mass; kraus is 0
    Spectrum source;          // decomposition of the marginal it was built from
};

// Build from the marginal itself (its profile covers exactly the parties in s).
SmoothingChannel build_smoothing_channel(const DensityOperator& rho_s, const PartySet& s, double eps);

// Apply on a state living on the subsystem alone.
DensityOperator apply_local(const SmoothingChannel& ch, const DensityOperator& t_s);

// Extend by identity on the complement and apply to the full state.
DensityOperator apply_extended(const SmoothingChannel& ch, const DensityOperator& t);

// Classical counterpart: a per-marginal-cell multiplier field.
struct ClassicalChannel {
    PartySet subsystem;
    std::vector<double> multiplier;  // f over the subsystem cells
    double epsilon = 0.0;
    CapSolution cap;
};

// Build from the full tensor's marginal on s.
ClassicalChannel build_classical_channel(const ClassicalState& p, const PartySet& s, double eps);
ClassicalState apply_extended(const ClassicalChannel& ch, const ClassicalState& t);

}  // namespace simsmooth

// Exact optimal smoothing distance for classical states, via linear
// programming over candidate tensors q: minimize the generalized trace
// distance D(p, q) subject to every requested marginal of q staying at or
// below its trace-ball cap.  Exponential in party count; guarded by a cell
// limit and meant for modest grids.

#pragma once

#include "simsmooth/lp.hpp"
#include "simsmooth/smoother.hpp"
#include "simsmooth/state.hpp"

namespace simsmooth {

inline constexpr long kOracleCellLimit = 6000;

// The assembled program.  Variables start with one q per cell; the reduced
// form adds one overshoot slack per positive-probability cell plus a single
// mass-deficit slack, using the identity
//   D(p, q) = sum_c max(0, q_c - p_c) + max(0, tr p - tr q).
// The literal form instead carries per-cell absolute-value slacks t_c and a
// trace-gap pair (u, v) for 0.5*||p-q||_1 + 0.5*|tr p - tr q|; both give the
// same optimum and the small literal form exists as a cross-check.
struct SmootherLp {
    LinearProgram lp;
    long cells = 0;
    int subset_rows = 0;   // marginal-cap rows (full-set caps become bounds)
    bool literal = false;
};

SmootherLp build_smoother_lp(const ClassicalState& p, const std::vector<PartySet>& subsets,
                             const std::vector<double>& caps, bool literal = false);

struct OracleResult {
    ClassicalState q;
    double distance = 0.0;       // D(p, q), recomputed from the tensors
    double lp_objective = 0.0;   // solver's objective, equal up to round-off
};

// Caps come from trace_cap_level on p's marginals at the family's eps; the
// family metric must be trace.
OracleResult optimal_classical_smoother(const ClassicalState& p, const SubsetFamily& family);

}  // namespace simsmooth

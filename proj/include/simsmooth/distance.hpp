// Distance measures for subnormalized states: generalized trace distance,
// generalized fidelity, and purified distance.

#pragma once

#include "simsmooth/state.hpp"

namespace simsmooth {

// Sum of singular values.
double trace_norm(const Matrix& m);

// D(a,b) = 0.5*||a-b||_1 + 0.5*|tr a - tr b|.  Lies in [0,1] for subnormalized
// inputs, 0 iff equal.
double trace_distance(const DensityOperator& a, const DensityOperator& b);
double trace_distance(const ClassicalState& a, const ClassicalState& b);

// F(a,b) = ||sqrt(a) sqrt(b)||_1 + sqrt((1 - tr a)(1 - tr b)), clamped to [0,1].
double generalized_fidelity(const DensityOperator& a, const DensityOperator& b);
double generalized_fidelity(const ClassicalState& a, const ClassicalState& b);

// P(a,b) = sqrt(1 - F(a,b)^2).  Satisfies D <= P <= sqrt(2 D).
double purified_distance(const DensityOperator& a, const DensityOperator& b);
double purified_distance(const ClassicalState& a, const ClassicalState& b);

}  // namespace simsmooth

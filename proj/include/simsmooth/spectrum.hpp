// Deterministic eigendecomposition and spectral calculus for density operators.

#pragma once

#include <functional>

#include "simsmooth/state.hpp"

namespace simsmooth {

// Eigenvalues descending; basis columns aligned with values.  Within a
// degenerate group the columns are phase-normalized (first component with
// magnitude above 1e-8 made real positive) and sorted lexicographically by
// (re, im) component pairs, so repeated runs order them identically.
struct Spectrum {
    RealVector values;
    Matrix basis;
};

// Eigenvalues in [-1e-10, 0) are clamped to 0; anything lower is an error.
Spectrum eigen_decompose(const DensityOperator& t);

// Same contract for a bare matrix; rejects non-Hermitian input.
Spectrum eigen_decompose_matrix(const Matrix& m);

// Sorted eigenvalues only (ascending from Eigen, returned descending); no basis.
RealVector hermitian_eigenvalues(const Matrix& m);

// U f(Lambda) U^dag with f applied to the clamped eigenvalues; f must land in
// [0, inf) over the spectrum's range.
DensityOperator apply_spectral_function(const DensityOperator& t, const std::function<double(double)>& f);

// Build U f(Lambda) U^dag from an existing decomposition (no re-solve).
Matrix spectral_matrix(const Spectrum& s, const std::function<double(double)>& f);

// Principal square root of a positive semidefinite matrix.
Matrix psd_sqrt(const Matrix& m);

}  // namespace simsmooth

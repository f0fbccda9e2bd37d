// Multipartite operators: dense subnormalized density operators, classical
// probability tensors, and the structural operations connecting them.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "simsmooth/types.hpp"

namespace simsmooth {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;   // max-entry deviation from M = M^dag
inline constexpr double kPsdTol = 1e-10;         // eigenvalues in [-kPsdTol, 0) are treated as 0
inline constexpr double kTraceTol = 1e-10;       // trace may exceed 1 by at most this
inline constexpr double kMassTol = 1e-12;        // classical mass may exceed 1 by at most this

// Hermitian, positive semidefinite, trace at most 1 (subnormalized states allowed).
class DensityOperator {
public:
    // Full invariant check; use for external or untrusted input.
    static DensityOperator validated(DimProfile profile, Matrix mat);

    // For outputs of operations that preserve positivity by construction.
    // Symmetrizes to remove round-off drift but skips the eigenvalue check.
    static DensityOperator trusted(DimProfile profile, Matrix mat);

    const DimProfile& profile() const { return profile_; }
    const Matrix& matrix() const { return mat_; }
    long dim() const { return profile_.total_dim(); }
    double trace() const { return mat_.trace().real(); }

private:
    DensityOperator(DimProfile profile, Matrix mat)
        : profile_(std::move(profile)), mat_(std::move(mat)) {}

    DimProfile profile_;
    Matrix mat_;
};

// Probability tensor over the joint cell set; entries >= 0, mass <= 1 + tol.
class ClassicalState {
public:
    static ClassicalState validated(DimProfile profile, std::vector<double> probs);
    static ClassicalState trusted(DimProfile profile, std::vector<double> probs);

    const DimProfile& profile() const { return profile_; }
    const std::vector<double>& probs() const { return probs_; }
    long dim() const { return static_cast<long>(probs_.size()); }
    double mass() const;

    DensityOperator to_density() const;
    ClassicalState marginal(const PartySet& keep) const;

private:
    ClassicalState(DimProfile profile, std::vector<double> probs)
        : profile_(std::move(profile)), probs_(std::move(probs)) {}

    DimProfile profile_;
    std::vector<double> probs_;
};

// ---------- structural operations ----------

// Kronecker product; the resulting profile concatenates the factors, so the
// left factor's parties are the most significant index digits.
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
ClassicalState tensor_product(const ClassicalState& a, const ClassicalState& b);

// Trace out the complement of keep.  keep = empty yields the total trace as a
// 1x1 operator on the degenerate profile (1).
DensityOperator partial_trace(const DensityOperator& t, const PartySet& keep);

// Place an arbitrary operator acting on the parties in s into the full space,
// identity on the complement.
Matrix embed_local(const Matrix& on_s, const PartySet& s, const DimProfile& profile);

// Diagonal conversion; requires off-diagonal entries below tol.
ClassicalState to_classical(const DensityOperator& t, double tol = 1e-10);

double max_abs_entry(const Matrix& m);

}  // namespace simsmooth

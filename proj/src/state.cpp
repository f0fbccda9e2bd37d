#include "simsmooth/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace simsmooth {

double max_abs_entry(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------- DensityOperator ----------

DensityOperator DensityOperator::validated(DimProfile profile, Matrix mat) {
    const long d = profile.total_dim();
    if (mat.rows() != d || mat.cols() != d) {
        throw std::invalid_argument("DensityOperator: matrix is " + std::to_string(mat.rows()) + "x" +
                                    std::to_string(mat.cols()) + " but profile " + profile.to_string() +
                                    " needs " + std::to_string(d));
    }
    if (max_abs_entry(mat - mat.adjoint()) > kHermitianTol) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian within tolerance");
    }
    Matrix sym = 0.5 * (mat + mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityOperator: matrix has eigenvalue below -1e-10");
    }
    if (sym.trace().real() > 1.0 + kTraceTol) {
        throw std::invalid_argument("DensityOperator: trace exceeds 1");
    }
    return DensityOperator(std::move(profile), std::move(sym));
}

DensityOperator DensityOperator::trusted(DimProfile profile, Matrix mat) {
    Matrix sym = 0.5 * (mat + mat.adjoint());
    return DensityOperator(std::move(profile), std::move(sym));
}

// ---------- ClassicalState ----------

ClassicalState ClassicalState::validated(DimProfile profile, std::vector<double> probs) {
    if (static_cast<long>(probs.size()) != profile.total_dim()) {
        throw std::invalid_argument("ClassicalState: entry count " + std::to_string(probs.size()) +
                                    " does not match profile " + profile.to_string());
    }
    double mass = 0.0;
    for (double& p : probs) {
        if (p < -kMassTol) throw std::invalid_argument("ClassicalState: negative entry");
        if (p < 0.0) p = 0.0;
        mass += p;
    }
    if (mass > 1.0 + kMassTol) throw std::invalid_argument("ClassicalState: mass exceeds 1");
    return ClassicalState(std::move(profile), std::move(probs));
}

ClassicalState ClassicalState::trusted(DimProfile profile, std::vector<double> probs) {
    for (double& p : probs) {
        if (p < 0.0) p = 0.0;
    }
    return ClassicalState(std::move(profile), std::move(probs));
}

double ClassicalState::mass() const {
    double s = 0.0;
    for (double p : probs_) s += p;
    return s;
}

DensityOperator ClassicalState::to_density() const {
    Matrix m = Matrix::Zero(dim(), dim());
    for (long i = 0; i < dim(); ++i) m(i, i) = probs_[i];
    return DensityOperator::trusted(profile_, std::move(m));
}

ClassicalState ClassicalState::marginal(const PartySet& keep) const {
    check_parties_in_profile(keep, profile_, "ClassicalState::marginal");
    const SubsetIndexer ix = make_indexer(profile_, keep);
    std::vector<double> out(ix.sub_dim, 0.0);
    for (long a = 0; a < ix.sub_dim; ++a) {
        double s = 0.0;
        for (long e = 0; e < ix.comp_dim; ++e) s += probs_[ix.sub_offset[a] + ix.comp_offset[e]];
        out[a] = s;
    }
    return ClassicalState::trusted(restricted_profile(profile_, keep), std::move(out));
}

// ---------- structural operations ----------

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    const long da = a.dim(), db = b.dim();
    Matrix out(da * db, da * db);
    for (long ia = 0; ia < da; ++ia) {
        for (long ja = 0; ja < da; ++ja) {
            out.block(ia * db, ja * db, db, db) = a.matrix()(ia, ja) * b.matrix();
        }
    }
    std::vector<int> dims = a.profile().dims();
    dims.insert(dims.end(), b.profile().dims().begin(), b.profile().dims().end());
    return DensityOperator::trusted(DimProfile(std::move(dims)), std::move(out));
}

ClassicalState tensor_product(const ClassicalState& a, const ClassicalState& b) {
    std::vector<double> out;
    out.reserve(a.dim() * b.dim());
    for (double pa : a.probs()) {
        for (double pb : b.probs()) out.push_back(pa * pb);
    }
    std::vector<int> dims = a.profile().dims();
    dims.insert(dims.end(), b.profile().dims().begin(), b.profile().dims().end());
    return ClassicalState::trusted(DimProfile(std::move(dims)), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& t, const PartySet& keep) {
    check_parties_in_profile(keep, t.profile(), "partial_trace");
    const SubsetIndexer ix = make_indexer(t.profile(), keep);
    Matrix out = Matrix::Zero(ix.sub_dim, ix.sub_dim);
    const Matrix& m = t.matrix();
    for (long a = 0; a < ix.sub_dim; ++a) {
        for (long b = 0; b < ix.sub_dim; ++b) {
            std::complex<double> s = 0.0;
            for (long e = 0; e < ix.comp_dim; ++e) {
                s += m(ix.sub_offset[a] + ix.comp_offset[e], ix.sub_offset[b] + ix.comp_offset[e]);
            }
            out(a, b) = s;
        }
    }
    return DensityOperator::trusted(restricted_profile(t.profile(), keep), std::move(out));
}

Matrix embed_local(const Matrix& on_s, const PartySet& s, const DimProfile& profile) {
    check_parties_in_profile(s, profile, "embed_local");
    const SubsetIndexer ix = make_indexer(profile, s);
    if (on_s.rows() != ix.sub_dim || on_s.cols() != ix.sub_dim) {
        throw std::invalid_argument("embed_local: operator dimension does not match subset " + s.to_string());
    }
    Matrix out = Matrix::Zero(profile.total_dim(), profile.total_dim());
    for (long a = 0; a < ix.sub_dim; ++a) {
        for (long b = 0; b < ix.sub_dim; ++b) {
            const std::complex<double> v = on_s(a, b);
            if (v == 0.0) continue;
            for (long e = 0; e < ix.comp_dim; ++e) {
                out(ix.sub_offset[a] + ix.comp_offset[e], ix.sub_offset[b] + ix.comp_offset[e]) = v;
            }
        }
    }
    return out;
}

ClassicalState to_classical(const DensityOperator& t, double tol) {
    const Matrix& m = t.matrix();
    std::vector<double> probs(t.dim());
    for (long i = 0; i < t.dim(); ++i) {
        for (long j = 0; j < t.dim(); ++j) {
            if (i != j && std::abs(m(i, j)) > tol) {
                throw std::invalid_argument("to_classical: operator has off-diagonal weight");
            }
        }
        probs[i] = std::max(0.0, m(i, i).real());
    }
    return ClassicalState::trusted(t.profile(), std::move(probs));
}

}  // namespace simsmooth

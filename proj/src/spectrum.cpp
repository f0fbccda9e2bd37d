#include "simsmooth/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

namespace simsmooth {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kPhasePivotTol = 1e-8;

void phase_normalize(Matrix& basis) {
    for (long c = 0; c < basis.cols(); ++c) {
        for (long r = 0; r < basis.rows(); ++r) {
            const std::complex<double> v = basis(r, c);
            if (std::abs(v) > kPhasePivotTol) {
                basis.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
}

bool column_less(const Matrix& basis, long a, long b) {
    for (long r = 0; r < basis.rows(); ++r) {
        const std::complex<double> va = basis(r, a), vb = basis(r, b);
        if (va.real() != vb.real()) return va.real() < vb.real();
        if (va.imag() != vb.imag()) return va.imag() < vb.imag();
    }
    return false;
}

Spectrum decompose_symmetric(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigen_decompose: solver failed to converge");
    }
    const long d = sym.rows();
    Spectrum out;
    out.values = RealVector(d);
    out.basis = Matrix(d, d);
    for (long i = 0; i < d; ++i) {
        out.values[i] = es.eigenvalues()[d - 1 - i];
        out.basis.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    const double floor = -kPsdTol;
    for (long i = 0; i < d; ++i) {
        if (out.values[i] < floor) {
            throw std::invalid_argument("eigen_decompose: eigenvalue below -1e-10");
        }
        if (out.values[i] < 0.0) out.values[i] = 0.0;
    }
    phase_normalize(out.basis);

    // Canonical order inside each degenerate group.
    const double scale = std::max(1.0, std::abs(out.values[0]));
    long lo = 0;
    while (lo < d) {
        long hi = lo + 1;
        while (hi < d && out.values[lo] - out.values[hi] <= kDegenerateTol * scale) ++hi;
        if (hi - lo > 1) {
            std::vector<long> order(hi - lo);
            std::iota(order.begin(), order.end(), lo);
            std::sort(order.begin(), order.end(),
                      [&](long a, long b) { return column_less(out.basis, a, b); });
            Matrix block(d, hi - lo);
            for (long k = 0; k < hi - lo; ++k) block.col(k) = out.basis.col(order[k]);
            out.basis.middleCols(lo, hi - lo) = block;
        }
        lo = hi;
    }
    return out;
}

}  // namespace

Spectrum eigen_decompose(const DensityOperator& t) {
    return decompose_symmetric(t.matrix());
}

Spectrum eigen_decompose_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigen_decompose: matrix not square");
    if (max_abs_entry(m - m.adjoint()) > kHermitianTol) {
        throw std::invalid_argument("eigen_decompose: matrix not Hermitian within tolerance");
    }
    return decompose_symmetric(0.5 * (m + m.adjoint()));
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    const long d = m.rows();
    RealVector v(d);
    for (long i = 0; i < d; ++i) v[i] = es.eigenvalues()[d - 1 - i];
    return v;
}

Matrix spectral_matrix(const Spectrum& s, const std::function<double(double)>& f) {
    const long d = s.values.size();
    RealVector fv(d);
    for (long i = 0; i < d; ++i) {
        fv[i] = f(s.values[i]);
        if (!(fv[i] >= 0.0)) {
            throw std::invalid_argument("spectral_matrix: function value negative or NaN on spectrum");
        }
    }
    return s.basis * fv.asDiagonal() * s.basis.adjoint();
}

DensityOperator apply_spectral_function(const DensityOperator& t, const std::function<double(double)>& f) {
    return DensityOperator::trusted(t.profile(), spectral_matrix(eigen_decompose(t), f));
}

Matrix psd_sqrt(const Matrix& m) {
    Spectrum s = eigen_decompose_matrix(m);
    return spectral_matrix(s, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

}  // namespace simsmooth

#include "simsmooth/random.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace simsmooth {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed, uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(0x5851F42D4C957F2DULL * (stream + 1)))) {}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::complex<double> Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

StateKind parse_state_kind(const std::string& name) {
    if (name == "pure") return StateKind::pure;
    if (name == "mixed") return StateKind::mixed;
    if (name == "classical") return StateKind::classical;
    if (name == "classical-sparse") return StateKind::classical_sparse;
    throw std::invalid_argument("parse_state_kind: unknown kind '" + name + "'");
}

std::string state_kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::pure: return "pure";
        case StateKind::mixed: return "mixed";
        case StateKind::classical: return "classical";
        case StateKind::classical_sparse: return "classical-sparse";
    }
    throw std::invalid_argument("state_kind_name: bad enum value");
}

namespace {

// Keep roughly this fraction of cells in a sparse classical draw.
constexpr double kSparseKeepProbability = 0.3;

Matrix gaussian_matrix(long rows, long cols, Rng& rng) {
    Matrix g(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    }
    return g;
}

}  // namespace

ClassicalState random_classical(const DimProfile& profile, uint64_t seed, bool sparse) {
    Rng rng(seed);
    const long d = profile.total_dim();
    std::vector<double> p(d, 0.0);
    long kept = 0;
    for (long i = 0; i < d; ++i) {
        const double keep_draw = rng.uniform();
        const double weight = rng.uniform();
        if (!sparse || keep_draw < kSparseKeepProbability) {
            p[i] = weight;
            ++kept;
        }
    }
    if (kept == 0) {
        p[static_cast<long>(rng.next_u64() % static_cast<uint64_t>(d))] = 1.0;
    }
    double mass = 0.0;
    for (double x : p) mass += x;
    if (mass <= 0.0) {
        p[0] = 1.0;
        mass = 1.0;
    }
    for (double& x : p) x /= mass;
    return ClassicalState::trusted(profile, std::move(p));
}

DensityOperator random_state(const DimProfile& profile, StateKind kind, uint64_t seed) {
    const long d = profile.total_dim();
    switch (kind) {
        case StateKind::pure: {
            Rng rng(seed);
            Vector v(d);
            for (long i = 0; i < d; ++i) v[i] = rng.complex_gaussian();
            const double n2 = v.squaredNorm();
            if (n2 <= 0.0) {
                v.setZero();
                v[0] = 1.0;
            }
            Matrix m = (v * v.adjoint()) / v.squaredNorm();
            return DensityOperator::trusted(profile, std::move(m));
        }
        case StateKind::mixed: {
            Rng rng(seed);
            const Matrix g = gaussian_matrix(d, d, rng);
            Matrix m = g * g.adjoint();
            m /= m.trace().real();
            return DensityOperator::trusted(profile, std::move(m));
        }
        case StateKind::classical:
            return random_classical(profile, seed, false).to_density();
        case StateKind::classical_sparse:
            return random_classical(profile, seed, true).to_density();
    }
    throw std::invalid_argument("random_state: bad kind");
}

Matrix random_contraction(long dim, Rng& rng) {
    Matrix g = gaussian_matrix(dim, dim, rng);
    const double top = Eigen::JacobiSVD<Matrix>(g).singularValues()(0);
    const double shrink = 0.3 + 0.7 * rng.uniform();
    if (top > 0.0) g *= shrink / top;
    return g;
}

}  // namespace simsmooth

#include "simsmooth/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace simsmooth {

namespace {

constexpr double kLambdaBisectTol = 1e-10;   // cap-level bisection width
constexpr double kMassSearchTol = 1e-10;     // golden-section width on the candidate mass
constexpr double kFeasibleSlack = 1e-12;     // fidelity threshold slack at the bracket edge
constexpr double kTinyEps = 1e-7;            // below this the cap equals the top eigenvalue

void check_eps(double eps, const char* where) {
    if (!(eps >= 0.0)) throw std::invalid_argument(std::string(where) + ": eps must be >= 0");
}

double lambda_max_of(std::span<const double> values) {
    double top = 0.0;
    for (double v : values) top = std::max(top, v);
    return top;
}

// Water-filling helper over the above-floor part of a spectrum, sorted
// descending with prefix sums so each query costs O(log r).  Entries at or
// below the eigenvalue floor count as kernel.
struct WaterFill {
    std::vector<double> v;         // eigenvalues above the floor, descending
    std::vector<double> pref;      // pref[k] = v_0 + ... + v_{k-1}
    std::vector<double> pref_rt;   // prefix sums of sqrt(v_i)
    double total = 0.0;

    explicit WaterFill(std::span<const double> values) {
        v.reserve(values.size());
        for (double x : values) {
            if (x > kEigenvalueFloor) v.push_back(x);
        }
        std::sort(v.begin(), v.end(), std::greater<double>());
        pref.resize(v.size() + 1, 0.0);
        pref_rt.resize(v.size() + 1, 0.0);
        for (size_t k = 0; k < v.size(); ++k) {
            pref[k + 1] = pref[k] + v[k];
            pref_rt[k + 1] = pref_rt[k] + std::sqrt(v[k]);
        }
        total = pref[v.size()];
    }

    long rank() const { return static_cast<long>(v.size()); }

    // Entries with v_i >= threshold come first in the descending order.
    long count_at_least(double threshold) const {
        return std::lower_bound(v.begin(), v.end(), threshold, std::greater<double>()) - v.begin();
    }

    // sum_i min(cap, c v_i)
    double filled_mass(double cap, double c) const {
        if (c <= 0.0) return 0.0;
        const long k = count_at_least(cap / c);
        return cap * k + c * (total - pref[k]);
    }

    // sum_i sqrt(v_i min(cap, c v_i))
    double overlap(double cap, double c) const {
        if (c <= 0.0) return 0.0;
        const long k = count_at_least(cap / c);
        return std::sqrt(cap) * pref_rt[k] + std::sqrt(c) * (total - pref[k]);
    }

    // Best overlap sum sqrt(v_i q_i) over 0 <= q_i <= cap with sum q_i = mass;
    // the maximizer is q_i = min(cap, c v_i) for the c matching the mass.
    double best_overlap(double cap, double mass) const {
        if (mass <= 0.0 || cap <= 0.0 || v.empty()) return 0.0;
        double lo = 0.0, hi = 1.0;
        while (filled_mass(cap, hi) < mass && hi < 1e30) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (filled_mass(cap, mid) < mass ? lo : hi) = mid;
        }
        return overlap(cap, 0.5 * (lo + hi));
    }
};

// Best generalized fidelity against candidates capped at lambda, maximizing
// over the candidate mass by golden section (the objective is concave).
double best_fidelity_at_cap(const WaterFill& wf, double lambda, double state_mass) {
    const double missing = std::max(0.0, 1.0 - state_mass);
    const double q_max = std::min(1.0, lambda * static_cast<double>(wf.rank()));
    auto fid = [&](double q) {
        return wf.best_overlap(lambda, q) + std::sqrt(missing * std::max(0.0, 1.0 - q));
    };
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = q_max;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = fid(x1), f2 = fid(x2);
    for (int it = 0; it < 200 && (b - a) > kMassSearchTol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = fid(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = fid(x1);
        }
    }
    return std::max({fid(a), fid(b), f1, f2});
}

}  // namespace

EntropyValue EntropyValue::from_lambda_max(double lambda) {
    if (lambda <= 0.0) return inf();
    return {-std::log2(lambda), false};
}

bool EntropyValue::at_least(const EntropyValue& other, double slack) const {
    if (infinite) return true;
    if (other.infinite) return false;
    return bits >= other.bits - slack;
}

EntropyValue min_entropy(const DensityOperator& t) {
    const RealVector ev = hermitian_eigenvalues(t.matrix());
    return EntropyValue::from_lambda_max(ev.size() ? ev[0] : 0.0);
}

EntropyValue min_entropy(const ClassicalState& t) {
    return EntropyValue::from_lambda_max(lambda_max_of(t.probs()));
}

CapSolution trace_cap_level(std::span<const double> values, double eps) {
    check_eps(eps, "trace_cap_level");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end(), std::greater<double>());
    double total = 0.0;
    for (double x : v) total += x;
    if (eps >= total) return {0.0, total, true};

    // Walking down the sorted values, the removed mass at cap v_{k+1} is
    // pref_{k+1} - (k+1) v_{k+1}; stop at the first segment reaching eps.
    double pref = 0.0;
    for (size_t k = 0; k < v.size(); ++k) {
        pref += v[k];
        const double next = (k + 1 < v.size()) ? v[k + 1] : 0.0;
        const double removed_at_next = pref - static_cast<double>(k + 1) * next;
        if (removed_at_next >= eps) {
            const double cap = (pref - eps) / static_cast<double>(k + 1);
            return {cap, eps, false};
        }
    }
    // Unreachable: eps < total guarantees a segment hit.
    throw std::runtime_error("trace_cap_level: no cap found");
}

CapSolution trace_cap_level(const Spectrum& s, double eps) {
    return trace_cap_level(std::span<const double>(s.values.data(), s.values.size()), eps);
}

EntropyValue smooth_min_entropy_trace(std::span<const double> values, double eps) {
    const CapSolution cs = trace_cap_level(values, eps);
    if (cs.infinite) return EntropyValue::inf();
    return EntropyValue::from_lambda_max(cs.cap);
}

EntropyValue smooth_min_entropy_trace(const DensityOperator& t, double eps) {
    const RealVector ev = hermitian_eigenvalues(t.matrix());
    std::vector<double> v(ev.size());
    for (long i = 0; i < ev.size(); ++i) v[i] = std::max(0.0, ev[i]);
    return smooth_min_entropy_trace(std::span<const double>(v), eps);
}

EntropyValue smooth_min_entropy_purified(std::span<const double> values, double eps) {
    check_eps(eps, "smooth_min_entropy_purified");
    if (eps >= 1.0) throw std::invalid_argument("smooth_min_entropy_purified: eps must be < 1");
    const WaterFill wf(values);
    if (wf.rank() == 0) return EntropyValue::inf();

    // Below kTinyEps the optimal cap agrees with the top eigenvalue to a
    // relative 1e-13 while the fidelity test loses quadratic resolution, so
    // answer directly.
    if (eps <= kTinyEps) return EntropyValue::from_lambda_max(wf.v[0]);

    double mass = wf.total;
    // Trace-one inputs carry rounding of order dim * 1e-16 in the eigenvalue
    // sum; the square root in the fidelity would amplify phantom missing mass
    // to the 1e-8 scale, so snap exact normalization.
    if (1.0 - mass <= kMassTol + static_cast<double>(values.size()) * kEigenvalueFloor) {
        mass = 1.0;
    }
    const double target = std::sqrt(1.0 - eps * eps) - kFeasibleSlack;

    // The zero candidate already sits inside the ball when the input mass is
    // at most eps^2; every cap is then feasible.
    if (std::sqrt(std::max(0.0, 1.0 - mass)) >= target) return EntropyValue::inf();

    auto feasible = [&](double lambda) {
        return best_fidelity_at_cap(wf, lambda, mass) >= target;
    };
    double lo = 0.0, hi = wf.v[0];
    while (hi - lo > kLambdaBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    // Cross-check against the wider trace ball: the purified-ball cap can
    // never be smaller.
    const CapSolution trace_cs = trace_cap_level(values, eps);
    if (!trace_cs.infinite && hi < trace_cs.cap - 1e-9) {
        throw std::runtime_error("smooth_min_entropy_purified: cap fell below the trace-ball cap");
    }
    return EntropyValue::from_lambda_max(hi);
}

EntropyValue smooth_min_entropy_purified(const DensityOperator& t, double eps) {
    const RealVector ev = hermitian_eigenvalues(t.matrix());
    std::vector<double> v(ev.size());
    for (long i = 0; i < ev.size(); ++i) v[i] = std::max(0.0, ev[i]);
    return smooth_min_entropy_purified(std::span<const double>(v), eps);
}

DensityOperator smoothed_state_trace(const DensityOperator& t, double eps) {
    check_eps(eps, "smoothed_state_trace");
    const Spectrum s = eigen_decompose(t);
    const CapSolution cs = trace_cap_level(s, eps);
    return DensityOperator::trusted(
        t.profile(), spectral_matrix(s, [&](double x) { return std::min(x, cs.cap); }));
}

ClassicalState smoothed_state_trace(const ClassicalState& t, double eps) {
    check_eps(eps, "smoothed_state_trace");
    const CapSolution cs = trace_cap_level(std::span<const double>(t.probs()), eps);
    std::vector<double> out(t.probs());
    for (double& p : out) p = std::min(p, cs.cap);
    return ClassicalState::trusted(t.profile(), std::move(out));
}

}  // namespace simsmooth

// Dense two-phase simplex with variable upper bounds.  Deterministic: Dantzig
// pricing with lowest-index tie-breaks, switching to Bland's rule after a run
// of degenerate pivots so cycling cannot occur.

#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace simsmooth {

enum class RowSense { le, ge, eq };

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// Minimize c.x subject to row constraints and 0 <= x_j <= upper_j.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;            // length num_vars
    std::vector<double> upper;                // length num_vars, kLpInfinity allowed
    std::vector<std::vector<double>> rows;    // each length num_vars
    std::vector<RowSense> senses;
    std::vector<double> rhs;

    void add_row(std::vector<double> coeffs, RowSense sense, double b) {
        rows.push_back(std::move(coeffs));
        senses.push_back(sense);
        rhs.push_back(b);
    }
};

struct LpSolution {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
};

struct LpInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LpUnbounded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LpSolution lp_solve(const LinearProgram& lp);

}  // namespace simsmooth

// Simplex tests: textbook instances with known optima, infeasible and
// unbounded detection, bounded variables, and determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "simsmooth/lp.hpp"
#include "simsmooth/random.hpp"

using namespace simsmooth;

namespace {

LinearProgram make_lp(int n, std::vector<double> objective) {
    LinearProgram lp;
    lp.num_vars = n;
    lp.objective = std::move(objective);
    lp.upper.assign(n, kLpInfinity);
    return lp;
}

}  // namespace

// ---------- basic instances ----------

TEST_CASE("a single nonnegative variable minimizes to zero") {
    LinearProgram lp = make_lp(1, {1.0});
    lp.add_row({1.0}, RowSense::ge, 0.0);
    LpSolution s = lp_solve(lp);
    CHECK(std::abs(s.objective) <= 1e-12);
    CHECK(std::abs(s.x[0]) <= 1e-12);
}

TEST_CASE("a transport toy hits the blend of both constraints") {
    // min x + 2y  s.t.  x + y >= 1,  x <= 0.3  ->  x = 0.3, y = 0.7.
    LinearProgram lp = make_lp(2, {1.0, 2.0});
    lp.add_row({1.0, 1.0}, RowSense::ge, 1.0);
    lp.add_row({1.0, 0.0}, RowSense::le, 0.3);
    LpSolution s = lp_solve(lp);
    CHECK(std::abs(s.objective - 1.7) <= 1e-10);
    CHECK(std::abs(s.x[0] - 0.3) <= 1e-10);
    CHECK(std::abs(s.x[1] - 0.7) <= 1e-10);
}

TEST_CASE("variable upper bounds are honored without explicit rows") {
    // min -x  s.t.  x <= 0.4 (as a bound)  ->  x = 0.4.
    LinearProgram lp = make_lp(1, {-1.0});
    lp.upper[0] = 0.4;
    LpSolution s = lp_solve(lp);
    CHECK(std::abs(s.objective + 0.4) <= 1e-12);
    CHECK(std::abs(s.x[0] - 0.4) <= 1e-12);
}

TEST_CASE("equality rows pin the feasible set") {
    // min x + y  s.t.  x + 2y = 1,  x - y = 0  ->  x = y = 1/3.
    LinearProgram lp = make_lp(2, {1.0, 1.0});
    lp.add_row({1.0, 2.0}, RowSense::eq, 1.0);
    lp.add_row({1.0, -1.0}, RowSense::eq, 0.0);
    LpSolution s = lp_solve(lp);
    CHECK(std::abs(s.x[0] - 1.0 / 3) <= 1e-10);
    CHECK(std::abs(s.x[1] - 1.0 / 3) <= 1e-10);
    CHECK(std::abs(s.objective - 2.0 / 3) <= 1e-10);
}

TEST_CASE("degenerate ties resolve without cycling") {
    // Klee-Minty-flavored instance with many degenerate vertices.
    LinearProgram lp = make_lp(3, {-100.0, -10.0, -1.0});
    lp.add_row({1.0, 0.0, 0.0}, RowSense::le, 1.0);
    lp.add_row({20.0, 1.0, 0.0}, RowSense::le, 100.0);
    lp.add_row({200.0, 20.0, 1.0}, RowSense::le, 10000.0);
    LpSolution s = lp_solve(lp);
    CHECK(std::abs(s.objective + 10000.0) <= 1e-8);
}

// ---------- failure detection ----------

TEST_CASE("contradictory rows are infeasible") {
    LinearProgram lp = make_lp(1, {1.0});
    lp.add_row({1.0}, RowSense::ge, 2.0);
    lp.add_row({1.0}, RowSense::le, 1.0);
    CHECK_THROWS_AS(lp_solve(lp), LpInfeasible);
}

TEST_CASE("an upper bound below a lower requirement is infeasible") {
    LinearProgram lp = make_lp(1, {1.0});
    lp.upper[0] = 0.5;
    lp.add_row({1.0}, RowSense::ge, 1.0);
    CHECK_THROWS_AS(lp_solve(lp), LpInfeasible);
}

TEST_CASE("a free descent direction is unbounded") {
    LinearProgram lp = make_lp(2, {-1.0, 0.0});
    lp.add_row({0.0, 1.0}, RowSense::le, 1.0);
    CHECK_THROWS_AS(lp_solve(lp), LpUnbounded);
}

// ---------- determinism and scale ----------

TEST_CASE("repeat solves give bitwise identical solutions") {
    Rng rng(99, 0);
    LinearProgram lp = make_lp(6, {});
    lp.objective.resize(6);
    for (double& c : lp.objective) c = rng.uniform() - 0.3;
    for (int r = 0; r < 4; ++r) {
        std::vector<double> row(6);
        for (double& a : row) a = rng.uniform();
        lp.add_row(std::move(row), RowSense::le, 2.0 + rng.uniform());
    }
    for (int j = 0; j < 6; ++j) lp.upper[j] = 1.0;
    LpSolution a = lp_solve(lp);
    LpSolution b = lp_solve(lp);
    CHECK(a.objective == b.objective);
    for (int j = 0; j < 6; ++j) CHECK(a.x[j] == b.x[j]);
}

TEST_CASE("random feasible instances satisfy their own constraints") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(1000 + trial, 0);
        const int n = 5;
        LinearProgram lp = make_lp(n, {});
        lp.objective.resize(n);
        for (double& c : lp.objective) c = rng.uniform();
        for (int j = 0; j < n; ++j) lp.upper[j] = 1.0;
        // Rows of the form sum a_j x_j >= b with b below the row maximum keep
        // the instance feasible since x = 1 works.
        std::vector<std::vector<double>> rows;
        for (int r = 0; r < 3; ++r) {
            std::vector<double> row(n);
            double total = 0.0;
            for (double& a : row) {
                a = rng.uniform();
                total += a;
            }
            lp.add_row(row, RowSense::ge, 0.5 * total);
            rows.push_back(row);
        }
        LpSolution s = lp_solve(lp);
        for (int r = 0; r < 3; ++r) {
            double lhs = 0.0;
            double total = 0.0;
            for (int j = 0; j < n; ++j) {
                lhs += rows[r][j] * s.x[j];
                total += rows[r][j];
            }
            CHECK(lhs >= 0.5 * total - 1e-9);
        }
        for (int j = 0; j < n; ++j) {
            CHECK(s.x[j] >= -1e-12);
            CHECK(s.x[j] <= 1.0 + 1e-12);
        }
    }
}

#pragma once

#include <cstddef>
#include <vector>

namespace ontolab {

/// Feasibility problem in standard form: A x = b, x >= 0 (A is m x n,
/// row-major). Rows with negative b are flipped internally.
struct StandardLp {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> a;  // a[r * n + c]
    std::vector<double> b;
};

struct Phase1Result {
    bool feasible = false;
    std::vector<double> x;       // length n, valid when feasible
    std::vector<double> y;       // length m: Farkas/dual vector, y.b > 0 and y.A <= 0 when infeasible
    double objective = 0.0;      // residual infeasibility (sum of artificials at optimum)
    std::size_t iterations = 0;
};

/// Phase-1 simplex with Bland's rule (artificial variable per row, minimize
/// their sum). Deterministic; throws std::runtime_error when the iteration
/// cap is hit so an indeterminate answer is never reported as a verdict.
Phase1Result solve_phase1(const StandardLp& lp, std::size_t max_iterations = 0);

}  // namespace ontolab

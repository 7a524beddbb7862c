#include "ontolab/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ontolab {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
}  // namespace

Phase1Result solve_phase1(const StandardLp& lp, std::size_t max_iterations) {
    const std::size_t m = lp.m, n = lp.n;
    if (lp.a.size() != m * n || lp.b.size() != m)
        throw std::invalid_argument("solve_phase1: shape mismatch");
    if (max_iterations == 0) max_iterations = 200 * (m + n) + 10000;

    // Tableau: columns [x (n) | artificials (m) | rhs], one extra row for the
    // phase-1 reduced costs. Rows with negative rhs are flipped first so the
    // artificial basis is feasible.
    const std::size_t cols = n + m + 1;
    std::vector<double> t((m + 1) * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };

    for (std::size_t r = 0; r < m; ++r) {
        const double sign = lp.b[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) at(r, c) = sign * lp.a[r * n + c];
        at(r, n + r) = 1.0;
        at(r, n + m) = sign * lp.b[r];
    }
    // cost row: minimize sum of artificials; express in terms of nonbasic x
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += at(r, c);
        at(m, c) = -s;
    }
    double obj = 0.0;
    for (std::size_t r = 0; r < m; ++r) obj += at(r, n + m);
    at(m, n + m) = -obj;

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    Phase1Result res;
    const std::size_t n_total = n + m;
    while (true) {
        // Bland: entering column = smallest index with negative reduced cost
        std::size_t enter = n_total;
        for (std::size_t c = 0; c < n_total; ++c) {
            if (at(m, c) < -kCostTol) {
                enter = c;
                break;
            }
        }
        if (enter == n_total) break;  // optimal

        // ratio test; Bland tie-break on smallest basis index
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double piv = at(r, enter);
            if (piv > kPivotTol) {
                const double ratio = at(r, n + m) / piv;
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 &&
                     (leave == m || basis[r] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave == m)
            throw std::runtime_error("solve_phase1: unbounded phase-1 (numerical breakdown)");

        // pivot
        const double piv = at(leave, enter);
        for (std::size_t c = 0; c <= n_total; ++c) at(leave, c) /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            double* row = &t[r * cols];
            const double* prow = &t[leave * cols];
            for (std::size_t c = 0; c <= n_total; ++c) row[c] -= f * prow[c];
        }
        basis[leave] = enter;

        if (++res.iterations > max_iterations)
            throw std::runtime_error(
                "solve_phase1: iteration cap exceeded; feasibility undecided");
    }

    res.objective = -at(m, n + m);
    // tolerance scaled by problem size: artificial residues accumulate dust
    double bscale = 1.0;
    for (double v : lp.b) bscale = std::max(bscale, std::abs(v));
    res.feasible = res.objective <= 1e-9 * bscale;

    if (res.feasible) {
        res.x.assign(n, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < n) res.x[basis[r]] = at(r, n + m);
        }
        for (double& v : res.x) {
            if (v < 0.0 && v > -1e-9) v = 0.0;  // degenerate dust
        }
    }

    // Simplex multipliers from the artificial (initial identity) columns:
    // reduced cost of artificial r is 1 - y_r. For an infeasible system this
    // is the Farkas vector in the flipped row signs, so map it back.
    res.y.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const double y_flipped = 1.0 - at(m, n + r);
        res.y[r] = lp.b[r] < 0.0 ? -y_flipped : y_flipped;
    }
    return res;
}

}  // namespace ontolab

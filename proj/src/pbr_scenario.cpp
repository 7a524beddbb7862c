#include "ontolab/pbr_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace ontolab {

namespace {

constexpr double kConditionTol = 1e-13;

std::array<StateVector, 4> condition_states(const StateVector& psi1, const StateVector& psi2) {
    return {tensor_product(psi1, psi1), tensor_product(psi1, psi2),
            tensor_product(psi2, psi1), tensor_product(psi2, psi2)};
}

StateVector combine(const StateVector& a, const StateVector& b, double ca, double cb) {
    std::vector<Complex> v(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) v[k] = ca * a[k] + cb * b[k];
    return StateVector::normalized(std::move(v));
}

// Candidate basis for angles (t, phi): xi1 rotates in the canonical null
// plane of s1, xi2 in the null plane of {s2, xi1}; xi3 and xi4 are forced by
// orthonormal completion. Everything downstream of the two angles is
// deterministic Gram-Schmidt, so the only freedom left is the closing
// condition <xi4|s4> = 0.
std::optional<std::array<StateVector, 4>> candidate_basis(
    const std::array<StateVector, 4>& s, double t, double phi) {
    try {
        const auto null1 = orthonormal_extension({s[0]}, 4);
        const StateVector xi1 = combine(null1[1], null1[2], std::cos(t), std::sin(t));

        const auto null2 = orthonormal_extension({s[1], xi1}, 4);
        const StateVector xi2 = combine(null2[2], null2[3], std::cos(phi), std::sin(phi));

        const auto null3 = orthonormal_extension({s[2], xi1, xi2}, 4);
        const StateVector& xi3 = null3[3];

        const auto completion = orthonormal_extension({xi1, xi2, xi3}, 4);
        const StateVector& xi4 = completion[3];
        return std::array<StateVector, 4>{xi1, xi2, xi3, xi4};
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // degenerate angle: constraints lost independence
    }
}

double closing_residual(const std::array<StateVector, 4>& s, double t, double phi) {
    const auto basis = candidate_basis(s, t, phi);
    if (!basis) return std::numeric_limits<double>::infinity();
    return std::abs(inner_product((*basis)[3], s[3]));
}

// Golden-section minimization of the closing residual along one angle.
double refine_angle(const std::array<StateVector, 4>& s, double lo, double hi, double t_fixed,
                    bool vary_phi, double other) {
    const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double a) {
        return vary_phi ? closing_residual(s, other, a) : closing_residual(s, a, other);
    };
    double x1 = hi - inv_gold * (hi - lo);
    double x2 = lo + inv_gold * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 160 && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_gold * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_gold * (hi - lo);
            f2 = eval(x2);
        }
    }
    (void)t_fixed;
    return 0.5 * (lo + hi);
}

void fix_phases(std::array<StateVector, 4>& basis) {
    for (auto& v : basis) {
        std::size_t lead = 0;
        double best = 0.0;
        for (std::size_t k = 0; k < v.dim(); ++k) {
            if (std::abs(v[k]) > best + 1e-9) {
                best = std::abs(v[k]);
                lead = k;
            }
        }
        const Complex ph = v[lead] / std::abs(v[lead]);
        std::vector<Complex> w(v.dim());
        for (std::size_t k = 0; k < v.dim(); ++k) w[k] = v[k] / ph;
        v = StateVector::normalized(std::move(w));
    }
}

}  // namespace

std::pair<StateVector, StateVector> build_states() {
    const double r = 1.0 / std::sqrt(2.0);
    return {StateVector({Complex{1.0, 0.0}, Complex{0.0, 0.0}}),
            StateVector({Complex{r, 0.0}, Complex{r, 0.0}})};
}

ProjectiveMeasurement build_measurement() {
    const auto [psi1, psi2] = build_states();
    const auto s = condition_states(psi1, psi2);

    // coarse deterministic scan of the two angles, then golden-section
    // refinement of the best cell along each angle in turn
    const int grid = 96;
    const double step = std::numbers::pi / grid;
    double best_t = 0.0, best_phi = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < grid; ++it) {
        for (int ip = 0; ip < grid; ++ip) {
            const double r = closing_residual(s, it * step, ip * step);
            if (r < best) {
                best = r;
                best_t = it * step;
                best_phi = ip * step;
            }
        }
    }
    for (int round = 0; round < 4 && best > 1e-14; ++round) {
        best_phi = refine_angle(s, best_phi - step, best_phi + step, 0.0, true, best_t);
        best_t = refine_angle(s, best_t - step, best_t + step, 0.0, false, best_phi);
        best = closing_residual(s, best_t, best_phi);
    }
    if (best > kConditionTol)
        throw std::runtime_error(
            "build_measurement: no orthonormal completion met all four conditions");

    auto basis = *candidate_basis(s, best_t, best_phi);
    fix_phases(basis);

    ProjectiveMeasurement m(std::vector<StateVector>(basis.begin(), basis.end()));
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(inner_product(m.outcome(i), s[i])) > kConditionTol)
            throw std::runtime_error("build_measurement: condition residual above tolerance");
    }
    if (!m.is_complete() || m.completeness_residual() > kOrthonormalTol)
        throw std::runtime_error("build_measurement: basis is not complete");
    return m;
}

PBRScenario build_scenario() {
    auto [psi1, psi2] = build_states();
    auto m = build_measurement();
    return PBRScenario{std::move(psi1), std::move(psi2), std::move(m),
                       {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}};
}

double condition_residual(const PBRScenario& s) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto [j, k] = s.condition_map[i];
        const auto prod = tensor_product(s.psi(j), s.psi(k));
        worst = std::max(worst, std::abs(inner_product(s.measurement.outcome(i), prod)));
    }
    return worst;
}

PbrStatistics quantum_statistics(const PBRScenario& s) {
    PbrStatistics out;
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            const auto prod = tensor_product(s.psi(j), s.psi(k));
            for (std::size_t i = 0; i < 4; ++i)
                out.at(i, j, k) = born_probability(s.measurement.outcome(i), prod);
        }
    }
    return out;
}

}  // namespace ontolab

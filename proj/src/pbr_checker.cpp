#include "ontolab/pbr_checker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ontolab/simplex.hpp"

namespace ontolab {

namespace {

// condition i annihilates the product state (j,k)
constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kConditionMap = {
    {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

PbrStatistics snap_zeros(PbrStatistics stats) {
    for (double& v : stats.p) {
        if (std::abs(v) < kZeroSnapTol) v = 0.0;
    }
    return stats;
}

bool sorted_contains(const std::vector<std::size_t>& sorted, std::size_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

ForcingReport forced_zeros(const EpistemicDensity& rho1, const EpistemicDensity& rho2,
                           const PbrStatistics& raw_stats, double support_eps) {
    validate_density(rho1);
    validate_density(rho2);
    if (!(rho1.space == rho2.space))
        throw std::invalid_argument("forced_zeros: densities on different ontic spaces");

    const PbrStatistics stats = snap_zeros(raw_stats);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto [j, k] = kConditionMap[i];
        if (stats.at(i, j, k) != 0.0)
            throw std::invalid_argument(
                "forced_zeros: statistics lack the four exact zeros; argument inapplicable");
    }

    const auto supp1 = support(rho1, support_eps);
    const auto supp2 = support(rho2, support_eps);
    const std::array<const std::vector<std::size_t>*, 2> supp = {&supp1, &supp2};

    ForcingReport report;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto [j, k] = kConditionMap[i];
        for (std::size_t la : *supp[j])
            for (std::size_t lb : *supp[k]) report.forced_zero_sets[i].push_back({la, lb});
    }

    // all four forced at once exactly on (supp1 cap supp2)^2
    std::vector<std::size_t> common;
    for (std::size_t l : supp1)
        if (sorted_contains(supp2, l)) common.push_back(l);
    for (std::size_t la : common)
        for (std::size_t lb : common) report.simultaneous_set.push_back({la, lb});

    report.contradiction = !report.simultaneous_set.empty();
    if (report.contradiction) report.witness = report.simultaneous_set.front();
    return report;
}

FeasibilityResult feasibility_lp(const EpistemicDensity& rho1, const EpistemicDensity& rho2,
                                 const PbrStatistics& raw_stats, double tol,
                                 const std::array<bool, 4>& prep_mask) {
    validate_density(rho1);
    validate_density(rho2);
    if (!(rho1.space == rho2.space))
        throw std::invalid_argument("feasibility_lp: densities on different ontic spaces");
    const std::size_t L = rho1.space.size();
    if (L > 64) throw std::invalid_argument("feasibility_lp: ontic space larger than 64 points");
    if (tol <= 0.0) throw std::invalid_argument("feasibility_lp: tol must be positive");

    const PbrStatistics stats = snap_zeros(raw_stats);
    const std::array<const std::vector<double>*, 2> w = {&rho1.weights, &rho2.weights};

    // variables: P(xi_i | la, lb) at column (i*L + la)*L + lb, then one slack
    // per statistics inequality. Completeness rows stay exact equalities.
    const std::size_t n_p = 4 * L * L;
    std::size_t n_stats = 0;
    for (bool on : prep_mask)
        if (on) n_stats += 4;
    const std::size_t n = n_p + 2 * n_stats;
    const std::size_t m = L * L + 2 * n_stats;

    StandardLp lp;
    lp.m = m;
    lp.n = n;
    lp.a.assign(m * n, 0.0);
    lp.b.assign(m, 0.0);
    auto var = [&](std::size_t i, std::size_t la, std::size_t lb) {
        return (i * L + la) * L + lb;
    };

    std::size_t row = 0;
    for (std::size_t la = 0; la < L; ++la) {
        for (std::size_t lb = 0; lb < L; ++lb, ++row) {
            for (std::size_t i = 0; i < 4; ++i) lp.a[row * n + var(i, la, lb)] = 1.0;
            lp.b[row] = 1.0;
        }
    }
    std::size_t slack = n_p;
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (!prep_mask[j * 2 + k]) continue;
            for (std::size_t i = 0; i < 4; ++i) {
                // sum_(la,lb) w_j(la) w_k(lb) P <= s + tol and >= s - tol
                for (int side = 0; side < 2; ++side, ++row) {
                    const double sgn = side == 0 ? 1.0 : -1.0;
                    for (std::size_t la = 0; la < L; ++la) {
                        const double wa = (*w[j])[la];
                        if (wa == 0.0) continue;
                        for (std::size_t lb = 0; lb < L; ++lb)
                            lp.a[row * n + var(i, la, lb)] = sgn * wa * (*w[k])[lb];
                    }
                    lp.a[row * n + slack] = 1.0;
                    lp.b[row] = sgn * stats.at(i, j, k) + tol;
                    ++slack;
                }
            }
        }
    }

    Phase1Result p1 = solve_phase1(lp);

    FeasibilityResult out;
    out.lp_iterations = p1.iterations;
    if (!p1.feasible) {
        out.status = LpStatus::infeasible;
        out.certificate = std::move(p1.y);
        out.residual = p1.objective;
        return out;
    }

    out.status = LpStatus::feasible;
    ResponseFunction r;
    r.space_a = rho1.space;
    r.space_b = rho1.space;
    r.n_outcomes = 4;
    r.table.assign(n_p, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t la = 0; la < L; ++la)
            for (std::size_t lb = 0; lb < L; ++lb)
                r.at(i, la, lb) = std::clamp(p1.x[var(i, la, lb)], 0.0, 1.0);
    // per-pair renormalization wipes simplex dust so the table meets the
    // ResponseFunction invariant exactly enough for downstream use
    for (std::size_t la = 0; la < L; ++la) {
        for (std::size_t lb = 0; lb < L; ++lb) {
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i) s += r.at(i, la, lb);
            if (s > 0.0) {
                for (std::size_t i = 0; i < 4; ++i) r.at(i, la, lb) /= s;
            } else {
                r.at(0, la, lb) = 1.0;
            }
        }
    }
    validate_response(r);

    double worst = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (!prep_mask[j * 2 + k]) continue;
            for (std::size_t i = 0; i < 4; ++i) {
                double pred = 0.0;
                for (std::size_t la = 0; la < L; ++la) {
                    const double wa = (*w[j])[la];
                    if (wa == 0.0) continue;
                    for (std::size_t lb = 0; lb < L; ++lb)
                        pred += r.at(i, la, lb) * wa * (*w[k])[lb];
                }
                worst = std::max(worst, std::abs(pred - stats.at(i, j, k)));
            }
        }
    }
    out.residual = worst;
    out.solution = std::move(r);
    return out;
}

OntologicalModel psi_dependent_escape(const PbrStatistics& raw_stats, std::size_t space_size) {
    if (space_size == 0) throw std::invalid_argument("psi_dependent_escape: empty ontic space");
    const PbrStatistics stats = snap_zeros(raw_stats);
    const OnticSpace space = OnticSpace::grid(space_size);
    const std::size_t L = space.size();

    // identical point-mass densities: full overlap, and the predicted values
    // reduce to the stored table entries with no rounding at all
    const auto rho = EpistemicDensity::point_mass(space, 0);

    PsiDependentResponse r;
    r.space_a = space;
    r.space_b = space;
    r.preparations = {"1", "2"};
    r.n_outcomes = 4;
    r.table.assign(2 * 2 * 4 * L * L, 0.0);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t la = 0; la < L; ++la)
                    for (std::size_t lb = 0; lb < L; ++lb)
                        r.table[r.index(j, k, i, la, lb)] = stats.at(i, j, k);
    validate_response(r);

    OntologicalModel m;
    m.kind = ModelKind::psi_dependent;
    m.densities = {{"1", rho}, {"2", rho}};
    m.response = std::move(r);
    validate_model(m);
    return m;
}

PoorMansReport poor_mans_check(const EpistemicDensity& rho_psi, const EpistemicDensity& rho_psi1,
                               const std::vector<std::vector<double>>& response,
                               std::size_t x0_index, double p_psi, double p_psi1,
                               double support_eps) {
    validate_density(rho_psi);
    validate_density(rho_psi1);
    if (!(rho_psi.space == rho_psi1.space))
        throw std::invalid_argument("poor_mans_check: densities on different ontic spaces");
    const std::size_t L = rho_psi.space.size();
    if (x0_index >= response.size())
        throw std::invalid_argument("poor_mans_check: x0_index out of range");
    for (const auto& outcome_row : response) {
        if (outcome_row.size() != L)
            throw std::invalid_argument("poor_mans_check: response table width != space size");
    }
    for (std::size_t l = 0; l < L; ++l) {
        double s = 0.0;
        for (const auto& outcome_row : response) {
            if (outcome_row[l] < 0.0 || outcome_row[l] > 1.0)
                throw std::invalid_argument("poor_mans_check: response entry outside [0,1]");
            s += outcome_row[l];
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("poor_mans_check: response not complete per lambda");
    }

    if (std::abs(p_psi) >= kZeroSnapTol)
        throw std::invalid_argument("poor_mans_check: p_psi is not an interference null");
    if (p_psi1 <= 0.0)
        throw std::invalid_argument("poor_mans_check: p_psi1 must be positive");

    const auto& rx0 = response[x0_index];

    // the model must actually reproduce the null, otherwise the chain of
    // implications never starts
    double model_p_psi = 0.0;
    for (std::size_t l = 0; l < L; ++l) model_p_psi += rho_psi.weights[l] * rx0[l];
    if (model_p_psi >= kZeroSnapTol)
        throw std::invalid_argument(
            "poor_mans_check: response does not reproduce the null at x0; inapplicable");

    PoorMansReport rep;
    rep.applicable = true;
    rep.forced_zero_support = support(rho_psi, support_eps);

    const auto supp1 = support(rho_psi1, support_eps);
    std::vector<char> in_psi(L, 0);
    for (std::size_t l : rep.forced_zero_support) in_psi[l] = 1;

    rep.inclusion_holds = true;
    for (std::size_t l : supp1) {
        if (!in_psi[l]) {
            rep.inclusion_holds = false;
            if (!rep.witness) rep.witness = l;
            rep.mass_outside += rho_psi1.weights[l];
        }
    }

    for (std::size_t l = 0; l < L; ++l) rep.predicted_p_psi1 += rho_psi1.weights[l] * rx0[l];

    if (rep.inclusion_holds) {
        // response vanishes on supp(rho_psi), hence on all of supp(rho_psi1):
        // the model predicts 0 against the quantum p_psi1 > 0
        rep.contradiction = rep.predicted_p_psi1 < p_psi1 - kZeroSnapTol;
        rep.inclusion_refuted = rep.contradiction;
    } else {
        rep.contradiction = false;
        rep.inclusion_refuted = false;
    }
    return rep;
}

}  // namespace ontolab

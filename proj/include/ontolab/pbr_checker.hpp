#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ontolab/ontic_models.hpp"
#include "ontolab/pbr_scenario.hpp"

namespace ontolab {

/// Values below this are treated as the analytic zeros of the statistics
/// table before any forcing argument runs.
inline constexpr double kZeroSnapTol = 1e-12;

using PairIndex = std::pair<std::size_t, std::size_t>;  // (lambda, lambda')

/// Outcome of the forced-zero argument: per-condition zero sets, the set of
/// pairs where all four vanish simultaneously, and whether that clashes with
/// probability conservation.
struct ForcingReport {
    std::array<std::vector<PairIndex>, 4> forced_zero_sets;
    std::vector<PairIndex> simultaneous_set;
    bool contradiction = false;
    std::optional<PairIndex> witness;
};

/// Marks P(xi_i | lambda, lambda') = 0 on supp(rho_j) x supp(rho_k) for each
/// zero entry of the statistics, intersects, and flags the conflict with
/// sum_i P = 1. Throws std::invalid_argument when the statistics lack the
/// four exact zeros (inapplicable input).
ForcingReport forced_zeros(const EpistemicDensity& rho1, const EpistemicDensity& rho2,
                           const PbrStatistics& stats, double support_eps = 0.0);

enum class LpStatus { feasible, infeasible };

struct FeasibilityResult {
    LpStatus status = LpStatus::infeasible;
    std::optional<ResponseFunction> solution;  // reproduces the statistics within tol
    std::optional<std::vector<double>> certificate;  // Farkas vector over constraint rows
    double residual = 0.0;       // feasible: max statistics violation; infeasible: phase-1 gap
    std::size_t lp_iterations = 0;
};

/// Decides whether a psi-independent response function on the given pair of
/// densities can reproduce the statistics: variables P(xi_i|lambda,lambda'),
/// completeness equalities per pair, statistics equalities relaxed to +-tol,
/// phase-1 simplex with Bland's rule underneath. prep_mask selects which
/// preparation rows (j,k) are enforced (all four by default).
FeasibilityResult feasibility_lp(const EpistemicDensity& rho1, const EpistemicDensity& rho2,
                                 const PbrStatistics& stats, double tol = 1e-9,
                                 const std::array<bool, 4>& prep_mask = {true, true, true, true});

/// The escape construction: a psi-dependent model with identical
/// point-mass densities for both preparations (overlap_mass = 1) whose
/// response reproduces the statistics exactly.
OntologicalModel psi_dependent_escape(const PbrStatistics& stats, std::size_t space_size = 2);

/// Support-inclusion argument for one particle and one detection outcome.
struct PoorMansReport {
    bool applicable = false;
    std::vector<std::size_t> forced_zero_support;  // supp(rho_psi): response must vanish there
    bool inclusion_holds = false;                  // supp(rho_psi1) subset of supp(rho_psi)
    bool inclusion_refuted = false;                // the theorem's conclusion
    bool contradiction = false;                    // predicted 0 vs quantum p_psi1 > 0
    double predicted_p_psi1 = 0.0;                 // model's value for |<x0|Psi_1>|^2
    double mass_outside = 0.0;                     // rho_psi1 mass off supp(rho_psi)
    std::optional<std::size_t> witness;            // a lambda in supp(rho_psi1) \ supp(rho_psi)
};

/// response[i][lambda] is a single-system outcome table (completeness per
/// lambda); x0_index picks the interference-null outcome. Preconditions
/// p_psi = 0 (after zero snapping), p_psi1 > 0, and the response reproducing
/// p_psi are checked; violations throw std::invalid_argument.
PoorMansReport poor_mans_check(const EpistemicDensity& rho_psi, const EpistemicDensity& rho_psi1,
                               const std::vector<std::vector<double>>& response,
                               std::size_t x0_index, double p_psi, double p_psi1,
                               double support_eps = 0.0);

}  // namespace ontolab

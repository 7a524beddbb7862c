#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ontolab {

/// Finite ontic space: a list of unique opaque labels.
struct OnticSpace {
    std::vector<std::string> labels;

    static OnticSpace grid(std::size_t n, const std::string& prefix = "l");

    std::size_t size() const { return labels.size(); }
    bool operator==(const OnticSpace&) const = default;
};

void validate_space(const OnticSpace& s);

/// Probability weights over an ontic space: nonnegative, summing to 1
/// within 1e-12.
struct EpistemicDensity {
    OnticSpace space;
    std::vector<double> weights;

    static EpistemicDensity point_mass(OnticSpace space, std::size_t at);
    static EpistemicDensity uniform(OnticSpace space);
    /// Normalizes raw nonnegative weights.
    static EpistemicDensity from_weights(OnticSpace space, std::vector<double> raw);
};

void validate_density(const EpistemicDensity& d);

/// Product of two single-system densities over the pair space, row-major
/// (lambda, lambda').
struct JointDensity {
    OnticSpace space_a;
    OnticSpace space_b;
    std::vector<double> weights;  // weights[la * Lb + lb]

    double at(std::size_t la, std::size_t lb) const { return weights[la * space_b.size() + lb]; }
};

JointDensity product_density(const EpistemicDensity& rho_j, const EpistemicDensity& rho_k);

/// Psi-independent response: P(xi_i | lambda, lambda'), completeness
/// sum_i P = 1 for every pair.
struct ResponseFunction {
    OnticSpace space_a;
    OnticSpace space_b;
    std::size_t n_outcomes = 0;
    std::vector<double> table;  // table[(i * La + la) * Lb + lb]

    static std::size_t index(std::size_t i, std::size_t la, std::size_t lb, std::size_t La,
                             std::size_t Lb) {
        return (i * La + la) * Lb + lb;
    }
    double at(std::size_t i, std::size_t la, std::size_t lb) const {
        return table[index(i, la, lb, space_a.size(), space_b.size())];
    }
    double& at(std::size_t i, std::size_t la, std::size_t lb) {
        return table[index(i, la, lb, space_a.size(), space_b.size())];
    }
};

void validate_response(const ResponseFunction& r);

/// Psi-dependent response of the escape construction: the table carries an
/// extra pair of preparation labels, P(xi_i | Psi_j, Psi_k, lambda, lambda').
struct PsiDependentResponse {
    OnticSpace space_a;
    OnticSpace space_b;
    std::vector<std::string> preparations;  // labels indexed by j (and k)
    std::size_t n_outcomes = 0;
    // table[(((j * P + k) * m + i) * La + la) * Lb + lb]
    std::vector<double> table;

    std::size_t index(std::size_t j, std::size_t k, std::size_t i, std::size_t la,
                      std::size_t lb) const {
        const std::size_t P = preparations.size();
        return (((j * P + k) * n_outcomes + i) * space_a.size() + la) * space_b.size() + lb;
    }
    double at(std::size_t j, std::size_t k, std::size_t i, std::size_t la, std::size_t lb) const {
        return table[index(j, k, i, la, lb)];
    }
    std::size_t prep_index(const std::string& label) const;
};

void validate_response(const PsiDependentResponse& r);

enum class ModelKind { psi_independent, psi_dependent };

/// A full ontological model: per-preparation densities plus a response
/// function of either kind, all over one shared ontic space.
struct OntologicalModel {
    ModelKind kind = ModelKind::psi_independent;
    std::map<std::string, EpistemicDensity> densities;
    std::variant<ResponseFunction, PsiDependentResponse> response;
};

void validate_model(const OntologicalModel& m);

/// sum_{lambda,lambda'} P(xi_i | ...) rho_j(lambda) rho_k(lambda') for the
/// preparation pair (j,k) given by label.
double predict(const OntologicalModel& m, const std::string& j, const std::string& k,
               std::size_t outcome);

/// Indices with weight strictly above eps.
std::vector<std::size_t> support(const EpistemicDensity& rho, double eps = 0.0);

/// sum_lambda min(rho1, rho2): 0 iff supports are disjoint, 1 iff equal.
double overlap_mass(const EpistemicDensity& rho1, const EpistemicDensity& rho2);

}  // namespace ontolab

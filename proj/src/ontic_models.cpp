#include "ontolab/ontic_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace ontolab {

namespace {

constexpr double kSumTol = 1e-12;

bool finite_nonneg(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x) && x >= 0.0; });
}

}  // namespace

OnticSpace OnticSpace::grid(std::size_t n, const std::string& prefix) {
    OnticSpace s;
    s.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.labels.push_back(prefix + std::to_string(i));
    return s;
}

void validate_space(const OnticSpace& s) {
    if (s.labels.empty()) throw std::invalid_argument("OnticSpace: needs at least one point");
    std::unordered_set<std::string> seen;
    for (const auto& l : s.labels) {
        if (!seen.insert(l).second)
            throw std::invalid_argument("OnticSpace: duplicate label '" + l + "'");
    }
}

EpistemicDensity EpistemicDensity::point_mass(OnticSpace space, std::size_t at) {
    validate_space(space);
    if (at >= space.size()) throw std::invalid_argument("point_mass: index out of range");
    std::vector<double> w(space.size(), 0.0);
    w[at] = 1.0;
    return EpistemicDensity{std::move(space), std::move(w)};
}

EpistemicDensity EpistemicDensity::uniform(OnticSpace space) {
    validate_space(space);
    std::vector<double> w(space.size(), 1.0 / static_cast<double>(space.size()));
    return EpistemicDensity{std::move(space), std::move(w)};
}

EpistemicDensity EpistemicDensity::from_weights(OnticSpace space, std::vector<double> raw) {
    validate_space(space);
    if (raw.size() != space.size())
        throw std::invalid_argument("from_weights: weight count != space size");
    if (!finite_nonneg(raw)) throw std::invalid_argument("from_weights: negative or non-finite");
    double total = 0.0;
    for (double x : raw) total += x;
    if (total <= 0.0) throw std::invalid_argument("from_weights: total mass is zero");
    for (double& x : raw) x /= total;
    return EpistemicDensity{std::move(space), std::move(raw)};
}

void validate_density(const EpistemicDensity& d) {
    validate_space(d.space);
    if (d.weights.size() != d.space.size())
        throw std::invalid_argument("EpistemicDensity: weight count != space size");
    if (!finite_nonneg(d.weights))
        throw std::invalid_argument("EpistemicDensity: negative or non-finite weight");
    double total = 0.0;
    for (double x : d.weights) total += x;
    if (std::abs(total - 1.0) > kSumTol)
        throw std::invalid_argument("EpistemicDensity: weights do not sum to 1 within 1e-12");
}

JointDensity product_density(const EpistemicDensity& rho_j, const EpistemicDensity& rho_k) {
    validate_density(rho_j);
    validate_density(rho_k);
    JointDensity out{rho_j.space, rho_k.space, {}};
    out.weights.resize(rho_j.weights.size() * rho_k.weights.size());
    std::size_t q = 0;
    for (double a : rho_j.weights)
        for (double b : rho_k.weights) out.weights[q++] = a * b;
    return out;
}

void validate_response(const ResponseFunction& r) {
    validate_space(r.space_a);
    validate_space(r.space_b);
    const std::size_t La = r.space_a.size(), Lb = r.space_b.size();
    if (r.n_outcomes == 0) throw std::invalid_argument("ResponseFunction: no outcomes");
    if (r.table.size() != r.n_outcomes * La * Lb)
        throw std::invalid_argument("ResponseFunction: table size mismatch");
    for (double x : r.table) {
        if (!std::isfinite(x) || x < 0.0 || x > 1.0)
            throw std::invalid_argument("ResponseFunction: entry outside [0,1]");
    }
    for (std::size_t la = 0; la < La; ++la) {
        for (std::size_t lb = 0; lb < Lb; ++lb) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.n_outcomes; ++i) s += r.at(i, la, lb);
            if (std::abs(s - 1.0) > kSumTol)
                throw std::invalid_argument(
                    "ResponseFunction: outcome probabilities do not sum to 1 within 1e-12");
        }
    }
}

std::size_t PsiDependentResponse::prep_index(const std::string& label) const {
    for (std::size_t j = 0; j < preparations.size(); ++j)
        if (preparations[j] == label) return j;
    throw std::invalid_argument("PsiDependentResponse: unknown preparation '" + label + "'");
}

void validate_response(const PsiDependentResponse& r) {
    validate_space(r.space_a);
    validate_space(r.space_b);
    const std::size_t La = r.space_a.size(), Lb = r.space_b.size(), P = r.preparations.size();
    if (P == 0) throw std::invalid_argument("PsiDependentResponse: no preparations");
    if (r.n_outcomes == 0) throw std::invalid_argument("PsiDependentResponse: no outcomes");
    if (r.table.size() != P * P * r.n_outcomes * La * Lb)
        throw std::invalid_argument("PsiDependentResponse: table size mismatch");
    for (double x : r.table) {
        if (!std::isfinite(x) || x < 0.0 || x > 1.0)
            throw std::invalid_argument("PsiDependentResponse: entry outside [0,1]");
    }
    for (std::size_t j = 0; j < P; ++j)
        for (std::size_t k = 0; k < P; ++k)
            for (std::size_t la = 0; la < La; ++la)
                for (std::size_t lb = 0; lb < Lb; ++lb) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < r.n_outcomes; ++i) s += r.at(j, k, i, la, lb);
                    if (std::abs(s - 1.0) > kSumTol)
                        throw std::invalid_argument(
                            "PsiDependentResponse: completeness fails for a (j,k,lambda,lambda')");
                }
}

void validate_model(const OntologicalModel& m) {
    if (m.densities.empty()) throw std::invalid_argument("OntologicalModel: no densities");
    const OnticSpace* shared = nullptr;
    for (const auto& [label, d] : m.densities) {
        validate_density(d);
        if (shared && !(d.space == *shared))
            throw std::invalid_argument("OntologicalModel: densities on different ontic spaces");
        shared = &d.space;
    }
    if (m.kind == ModelKind::psi_independent) {
        const auto* r = std::get_if<ResponseFunction>(&m.response);
        if (!r) throw std::invalid_argument("OntologicalModel: kind/response mismatch");
        validate_response(*r);
        if (!(r->space_a == *shared) || !(r->space_b == *shared))
            throw std::invalid_argument("OntologicalModel: response space != density space");
    } else {
        const auto* r = std::get_if<PsiDependentResponse>(&m.response);
        if (!r) throw std::invalid_argument("OntologicalModel: kind/response mismatch");
        validate_response(*r);
        if (!(r->space_a == *shared) || !(r->space_b == *shared))
            throw std::invalid_argument("OntologicalModel: response space != density space");
        for (const auto& p : r->preparations) {
            if (!m.densities.count(p))
                throw std::invalid_argument("OntologicalModel: response preparation '" + p +
                                            "' has no density");
        }
    }
}

double predict(const OntologicalModel& m, const std::string& j, const std::string& k,
               std::size_t outcome) {
    const auto itj = m.densities.find(j);
    const auto itk = m.densities.find(k);
    if (itj == m.densities.end()) throw std::invalid_argument("predict: unknown preparation " + j);
    if (itk == m.densities.end()) throw std::invalid_argument("predict: unknown preparation " + k);
    const auto& wj = itj->second.weights;
    const auto& wk = itk->second.weights;

    double s = 0.0;
    if (m.kind == ModelKind::psi_independent) {
        const auto& r = std::get<ResponseFunction>(m.response);
        if (outcome >= r.n_outcomes) throw std::invalid_argument("predict: outcome out of range");
        for (std::size_t la = 0; la < wj.size(); ++la)
            for (std::size_t lb = 0; lb < wk.size(); ++lb)
                s += r.at(outcome, la, lb) * wj[la] * wk[lb];
    } else {
        const auto& r = std::get<PsiDependentResponse>(m.response);
        if (outcome >= r.n_outcomes) throw std::invalid_argument("predict: outcome out of range");
        const std::size_t jj = r.prep_index(j), kk = r.prep_index(k);
        for (std::size_t la = 0; la < wj.size(); ++la)
            for (std::size_t lb = 0; lb < wk.size(); ++lb)
                s += r.at(jj, kk, outcome, la, lb) * wj[la] * wk[lb];
    }
    return s;
}

std::vector<std::size_t> support(const EpistemicDensity& rho, double eps) {
    if (eps < 0.0) throw std::invalid_argument("support: eps must be >= 0");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rho.weights.size(); ++i)
        if (rho.weights[i] > eps) out.push_back(i);
    return out;
}

double overlap_mass(const EpistemicDensity& rho1, const EpistemicDensity& rho2) {
    if (!(rho1.space == rho2.space))
        throw std::invalid_argument("overlap_mass: densities live on different spaces");
    double s = 0.0;
    for (std::size_t i = 0; i < rho1.weights.size(); ++i)
        s += std::min(rho1.weights[i], rho2.weights[i]);
    return s;
}

}  // namespace ontolab

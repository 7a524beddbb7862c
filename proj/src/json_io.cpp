#include "ontolab/json_io.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include "ontolab/version.hpp"

namespace ontolab {

std::string config_hash(const json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json report_envelope(const std::string& command, const json& config, std::uint64_t seed) {
    json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kVersion;
    j["command"] = command;
    j["seed"] = seed;
    j["config"] = config;
    j["config_hash"] = config_hash(config);
    return j;
}

std::string format_double(double v) {
    char buf[64];
    const int written = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, buf + written);
}

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json state_to_json(const StateVector& s) {
    json a = json::array();
    for (std::size_t k = 0; k < s.dim(); ++k) a.push_back(complex_to_json(s[k]));
    return a;
}

}  // namespace

json scenario_to_json(const PBRScenario& s) {
    json j;
    j["schema"] = kScenarioSchema;
    j["psi1"] = state_to_json(s.psi1);
    j["psi2"] = state_to_json(s.psi2);
    json basis = json::array();
    for (std::size_t i = 0; i < s.measurement.size(); ++i)
        basis.push_back(state_to_json(s.measurement.outcome(i)));
    j["measurement"] = basis;
    json cmap = json::array();
    for (const auto& [cj, ck] : s.condition_map) cmap.push_back(json::array({cj, ck}));
    j["condition_map"] = cmap;
    j["statistics"] = statistics_to_json(quantum_statistics(s));
    return j;
}

json statistics_to_json(const PbrStatistics& stats) {
    // rows are preparations (j,k); columns the four outcomes
    json rows = json::array();
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            json row;
            row["preparation"] = json::array({j, k});
            json v = json::array();
            for (std::size_t i = 0; i < 4; ++i) v.push_back(stats.at(i, j, k));
            row["outcomes"] = v;
            rows.push_back(row);
        }
    }
    return rows;
}

json model_to_json(const OntologicalModel& m) {
    validate_model(m);
    json j;
    j["schema"] = kModelSchema;
    j["kind"] = m.kind == ModelKind::psi_independent ? "psi_independent" : "psi_dependent";
    const OnticSpace& space = m.densities.begin()->second.space;
    j["space"] = space.labels;
    json dens;
    for (const auto& [label, d] : m.densities) dens[label] = d.weights;
    j["densities"] = dens;

    json r;
    if (m.kind == ModelKind::psi_independent) {
        const auto& rf = std::get<ResponseFunction>(m.response);
        r["outcomes"] = rf.n_outcomes;
        r["table"] = rf.table;  // row-major (i, lambda, lambda')
    } else {
        const auto& rf = std::get<PsiDependentResponse>(m.response);
        r["outcomes"] = rf.n_outcomes;
        r["preparations"] = rf.preparations;
        r["table"] = rf.table;  // row-major (j, k, i, lambda, lambda')
    }
    j["response"] = r;
    return j;
}

OntologicalModel model_from_json(const json& j) {
    if (j.value("schema", "") != kModelSchema)
        throw std::invalid_argument("model_from_json: unknown schema");
    OntologicalModel m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "psi_independent")
        m.kind = ModelKind::psi_independent;
    else if (kind == "psi_dependent")
        m.kind = ModelKind::psi_dependent;
    else
        throw std::invalid_argument("model_from_json: bad kind '" + kind + "'");

    OnticSpace space{j.at("space").get<std::vector<std::string>>()};
    for (const auto& [label, w] : j.at("densities").items()) {
        m.densities.emplace(label,
                            EpistemicDensity{space, w.get<std::vector<double>>()});
    }
    const json& r = j.at("response");
    if (m.kind == ModelKind::psi_independent) {
        ResponseFunction rf;
        rf.space_a = space;
        rf.space_b = space;
        rf.n_outcomes = r.at("outcomes").get<std::size_t>();
        rf.table = r.at("table").get<std::vector<double>>();
        m.response = std::move(rf);
    } else {
        PsiDependentResponse rf;
        rf.space_a = space;
        rf.space_b = space;
        rf.preparations = r.at("preparations").get<std::vector<std::string>>();
        rf.n_outcomes = r.at("outcomes").get<std::size_t>();
        rf.table = r.at("table").get<std::vector<double>>();
        m.response = std::move(rf);
    }
    validate_model(m);
    return m;
}

namespace {

json pair_list(const std::vector<PairIndex>& v) {
    json out = json::array();
    for (const auto& [a, b] : v) out.push_back(json::array({a, b}));
    return out;
}

}  // namespace

json forcing_report_to_json(const ForcingReport& r) {
    json j;
    json sets = json::array();
    for (const auto& s : r.forced_zero_sets) sets.push_back(pair_list(s));
    j["forced_zero_sets"] = sets;
    j["simultaneous_set"] = pair_list(r.simultaneous_set);
    j["contradiction"] = r.contradiction;
    if (r.witness)
        j["witness"] = json::array({r.witness->first, r.witness->second});
    else
        j["witness"] = nullptr;
    return j;
}

json feasibility_to_json(const FeasibilityResult& r) {
    json j;
    j["status"] = r.status == LpStatus::feasible ? "feasible" : "infeasible";
    j["residual"] = r.residual;
    j["lp_iterations"] = r.lp_iterations;
    if (r.solution) {
        json s;
        s["outcomes"] = r.solution->n_outcomes;
        s["table"] = r.solution->table;
        j["solution"] = s;
    } else {
        j["solution"] = nullptr;
    }
    j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
    return j;
}

json poor_mans_to_json(const PoorMansReport& r) {
    json j;
    j["applicable"] = r.applicable;
    j["forced_zero_support"] = r.forced_zero_support;
    j["inclusion_holds"] = r.inclusion_holds;
    j["inclusion_refuted"] = r.inclusion_refuted;
    j["contradiction"] = r.contradiction;
    j["predicted_p_psi1"] = r.predicted_p_psi1;
    j["mass_outside"] = r.mass_outside;
    j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    return j;
}

json null_window_to_json(const NullWindowReport& r) {
    json j;
    j["window"] = json::array({r.window_lo, r.window_hi});
    j["fraction_off"] = r.fraction_off;
    j["fraction_on"] = r.fraction_on;
    j["expected_off"] = r.expected_off;
    j["expected_on"] = r.expected_on;
    j["mc_sigma_on"] = r.mc_sigma_on;
    j["off_below_threshold"] = r.off_below_threshold;
    j["on_within_3sigma"] = r.on_within_3sigma;
    j["pass"] = r.pass;
    return j;
}

json phase_flip_to_json(const PhaseFlipReport& r) {
    json j;
    j["applicable"] = r.applicable;
    j["packet_cross_mass"] = r.packet_cross_mass;
    j["region1_max_diff"] = r.region1_max_diff;
    j["region2_max_diff"] = r.region2_max_diff;
    j["subensemble_max_diff"] = r.subensemble_max_diff;
    j["region1_samples"] =
        json::array({r.region1_samples_plus, r.region1_samples_minus});
    return j;
}

json overlap_demo_to_json(const OverlapDemoReport& r) {
    json j;
    j["overlap"] = r.overlap;
    j["strictly_positive"] = r.strictly_positive;
    return j;
}

}  // namespace ontolab

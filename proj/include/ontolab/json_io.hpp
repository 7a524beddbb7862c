#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "ontolab/bohm.hpp"
#include "ontolab/ontic_models.hpp"
#include "ontolab/pbr_checker.hpp"
#include "ontolab/pbr_scenario.hpp"

namespace ontolab {

using json = nlohmann::ordered_json;

/// FNV-1a 64-bit over the canonical dump of a config document; stable across
/// platforms so reports can be diffed byte for byte.
std::string config_hash(const json& config);

/// Report envelope: schema, tool version, command, seed, config and its hash.
json report_envelope(const std::string& command, const json& config, std::uint64_t seed);

/// Decimal with 17 significant digits; round-trips doubles exactly. Used for
/// CSV payloads.
std::string format_double(double v);

json scenario_to_json(const PBRScenario& s);
json statistics_to_json(const PbrStatistics& stats);

json model_to_json(const OntologicalModel& m);
OntologicalModel model_from_json(const json& j);

json forcing_report_to_json(const ForcingReport& r);
json feasibility_to_json(const FeasibilityResult& r);
json poor_mans_to_json(const PoorMansReport& r);

json null_window_to_json(const NullWindowReport& r);
json phase_flip_to_json(const PhaseFlipReport& r);
json overlap_demo_to_json(const OverlapDemoReport& r);

}  // namespace ontolab

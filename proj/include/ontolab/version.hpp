#pragma once

#include <string_view>

namespace ontolab {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "ontolab.report/1";
inline constexpr std::string_view kModelSchema = "ontolab.model/1";
inline constexpr std::string_view kScenarioSchema = "ontolab.scenario/1";

}  // namespace ontolab

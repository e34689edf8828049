#pragma once

// JSON records for bounds, settling checks, convexity scans and comparisons.

#include <span>

#include "json.hpp"

#include "fixtime/analysis.hpp"
#include "fixtime/bounds.hpp"

namespace fixtime {

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const StageBounds& s);
nlohmann::json to_json(const SettlingReport& r);
nlohmann::json to_json(const ConvexityReport& r);
nlohmann::json to_json(std::span<const CompareRow> rows);
nlohmann::json to_json(const StageEntry& e);
nlohmann::json to_json(const SimConfig& cfg);

}  // namespace fixtime

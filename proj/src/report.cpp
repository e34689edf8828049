#include "fixtime/report.hpp"

namespace fixtime {

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const BoundReport& r) {
    return {{"formula", formula_id(r.formula)}, {"total", r.total}, {"terms", r.terms}};
}

nlohmann::json to_json(const StageBounds& s) {
    return {{"stage", s.stage}, {"w", s.w}, {"printed", to_json(s.printed)}, {"derived", to_json(s.derived)}};
}

nlohmann::json to_json(const SettlingReport& r) {
    return {{"id", r.id},
            {"x0", r.x0},
            {"criterion", to_string(r.criterion)},
            {"eps", r.eps},
            {"empirical", opt(r.empirical)},
            {"bound", to_json(r.bound)},
            {"satisfied", r.satisfied},
            {"margin", opt(r.margin)}};
}

nlohmann::json to_json(const ConvexityReport& r) {
    nlohmann::json iv = nlohmann::json::array();
    for (const auto& i : r.intervals) iv.push_back({{"lo", i.lo}, {"hi", i.hi}, {"sign", i.sign}});
    return {{"units", to_string(r.units)}, {"intervals", iv}, {"switch_points", r.switch_points}};
}

nlohmann::json to_json(std::span<const CompareRow> rows) {
    nlohmann::json out = nlohmann::json::array();
    std::size_t rank = 1;
    for (const auto& row : rows) {
        nlohmann::json j = {{"rank", rank++}, {"id", row.id}, {"input_index", row.index}, {"time", opt(row.time)}};
        if (!row.error.empty()) j["error"] = row.error;
        out.push_back(std::move(j));
    }
    return out;
}

nlohmann::json to_json(const StageEntry& e) {
    return {{"stage", e.stage},
            {"radius", e.radius},
            {"entry", opt(e.entry)},
            {"bounds", to_json(e.bounds)},
            {"before_derived", e.before_derived}};
}

nlohmann::json to_json(const SimConfig& c) {
    return {{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol},   {"h_init", c.h_init},
            {"h_min", c.h_min},     {"h_max", c.h_max},       {"t_end", c.t_end},
            {"eps_stop", c.eps_stop}, {"record_dt", c.record_dt}};
}

}  // namespace fixtime

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fixtime/backstep.hpp"
#include "fixtime/bounds.hpp"
#include "fixtime/laws.hpp"

namespace fixtime::cli {

struct LawPreset {
    std::string id;     ///< "law26" .. "law33"
    std::string alias;  ///< ScalarLaw::name()
    ScalarLaw law;
};

/// The eight first-order laws in canonical order.
const std::vector<LawPreset>& law_presets();

/// Looks up a law by id or alias; nullopt when unknown.
std::optional<LawPreset> find_law(const std::string& key);

/// Parameters of the first-order laws read off the V = |x| dynamics, which
/// is the coordinate choice that reproduces the reference values.
Lemma2Params law31_bound_params();
ExpLemmaParams law32_bound_params();
ExpSetParams law33_bound_params();

/// Reference bound for a law preset id, if the law has one.
std::optional<BoundReport> reference_bound(const std::string& id);

/// Disturbance presets: "none", "sin_t" (20 sin t), "sin_2t" (20 sin 2t).
std::optional<DisturbanceSpec> disturbance_preset(const std::string& key);

}  // namespace fixtime::cli

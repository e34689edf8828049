#include "cli/presets.hpp"

#include "fixtime/errors.hpp"

namespace fixtime::cli {

const std::vector<LawPreset>& law_presets() {
    static const std::vector<LawPreset> table = [] {
        std::vector<LawPreset> t;
        const ScalarLaw laws[] = {presets::law26_linear(),     presets::law27_relay(),
                                  presets::law28_frac_power(), presets::law29_polyakov(),
                                  presets::law30_hyperexp(),   presets::law31_heaviside_exp(),
                                  presets::law32_exp_tail(),   presets::law33_exp_set()};
        int number = 26;
        for (const auto& law : laws) t.push_back({"law" + std::to_string(number++), law.name(), law});
        return t;
    }();
    return table;
}

std::optional<LawPreset> find_law(const std::string& key) {
    for (const auto& p : law_presets()) {
        if (p.id == key || p.alias == key) return p;
    }
    return std::nullopt;
}

Lemma2Params law31_bound_params() { return Lemma2Params{1.0, 1.0, 3.0, 3.0, 1.0 / 3.0, 1.0, 0.01}; }

ExpLemmaParams law32_bound_params() {
    return ExpLemmaParams{1.0, 1.0, 0.05, 1.0, 3.0, 3.0, 0.5, 1.0 / 3.0, 1.0, 0.02};
}

ExpSetParams law33_bound_params() { return ExpSetParams{1.0, 1.0, 0.05, 3.0, 3.0, 0.5, 1.0, 0.01}; }

std::optional<BoundReport> reference_bound(const std::string& id) {
    if (id == "law29") return polyakov_bound(PolyakovParams{1.0, 1.0, 3.0, 1.0 / 3.0, 1.0});
    if (id == "law31") return lemma2_bound(law31_bound_params());
    if (id == "law32") return explemma_bound(law32_bound_params());
    if (id == "law33") return expset_bound(law33_bound_params());
    return std::nullopt;
}

std::optional<DisturbanceSpec> disturbance_preset(const std::string& key) {
    if (key == "none") return std::nullopt;
    if (key == "sin_t") return DisturbanceSpec{20.0, 1.0, 1};
    if (key == "sin_2t") return DisturbanceSpec{20.0, 2.0, 1};
    throw InvalidParams("unknown disturbance preset '" + key + "' (expected none, sin_t or sin_2t)");
}

}  // namespace fixtime::cli

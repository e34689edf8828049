#pragma once

// Experiment configuration. A YAML document (schema 1) and command-line
// flags are merged into one tree, flags last, and then decoded into an
// ExperimentConfig. The tree is validated field by field so the first
// missing or malformed entry is reported by name.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "fixtime/analysis.hpp"
#include "fixtime/laws.hpp"
#include "fixtime/sim.hpp"

namespace fixtime::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Simulate, Bound, Compare, Backstep, Convexity, Reproduce };

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(const std::string& s);

struct LawSpec {
    std::string id;  ///< preset id, or "inline"
    ScalarLaw law;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Simulate;
    std::filesystem::path out = ".";
    SimConfig sim;
    /// Raw `sim` overrides, re-applied on top of per-figure defaults by reproduce.
    YAML::Node sim_node;
    /// Settling threshold.
    double eps = 1e-6;
    bool eps_given = false;

    std::optional<LawSpec> law;  // simulate, convexity
    std::vector<double> x0;      // simulate, compare, backstep

    std::string lemma;  // bound
    YAML::Node bound_params;

    std::vector<LawSpec> laws;  // compare
    double radius = 0.01;

    std::string controller = "example2";  // backstep
    std::optional<DisturbanceSpec> disturbance;
    std::vector<double> linear_gain;
    std::vector<double> w;

    double lo = 0.0, hi = 0.0, tol = 1e-10;  // convexity
    ConvexityUnits units = ConvexityUnits::State;

    std::string figure;  // reproduce
};

/// Parses a config file. An empty file yields a null tree.
YAML::Node load_tree(const std::filesystem::path& path);

/// Decodes a merged tree for the given subcommand. Throws ConfigError.
ExperimentConfig decode(const YAML::Node& tree, ExperimentKind kind);

/// base with the entries of a `sim` map applied. Throws ConfigError.
SimConfig with_overrides(SimConfig base, const YAML::Node& sim);

/// Default simulation settings per experiment.
SimConfig default_sim(ExperimentKind kind);

}  // namespace fixtime::cli

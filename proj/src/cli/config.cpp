#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include "cli/presets.hpp"
#include "fixtime/errors.hpp"

namespace fixtime::cli {

namespace {

constexpr int kSchema = 1;

[[noreturn]] void missing(const std::string& field) { throw ConfigError("config: missing required field '" + field + "'"); }

template <class T>
T read(const YAML::Node& node, const std::string& field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("config: field '" + field + "' has the wrong type");
    }
}

double read_double(const YAML::Node& parent, const char* key, const std::string& path, double fallback) {
    const YAML::Node n = parent[key];
    return n ? read<double>(n, path) : fallback;
}

std::vector<double> read_vector(const YAML::Node& node, const std::string& field) {
    if (node.IsScalar()) return {read<double>(node, field)};
    if (!node.IsSequence()) throw ConfigError("config: field '" + field + "' must be a number or a list");
    std::vector<double> v;
    for (std::size_t i = 0; i < node.size(); ++i)
        v.push_back(read<double>(node[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

ScalarLaw inline_law(const YAML::Node& n) {
    if (!n["family"]) missing("law.family");
    const auto family = read<std::string>(n["family"], "law.family");
    auto num = [&n](const char* key, double fallback) {
        return read_double(n, key, std::string("law.") + key, fallback);
    };
    try {
        if (family == "linear") return ScalarLaw{Linear{num("gain", 1.0)}};
        if (family == "relay") return ScalarLaw{Relay{num("gain", 1.0)}};
        if (family == "frac_power") return ScalarLaw{FracPower{num("exponent", 1.0 / 3.0)}};
        if (family == "polyakov") {
            return ScalarLaw{PolyakovFT{num("alpha", 1.0), num("chi", 1.0), num("p", 3.0), num("l", 1.0 / 3.0)}};
        }
        if (family == "hyperexp") return ScalarLaw{HyperExp{}};
        if (family == "heaviside_exp") {
            return ScalarLaw{HeavisideExpLaw{num("alpha", 1.0), num("beta", 1.0), num("p", 3.0), num("q", 3.0),
                                             num("r", 1.0 / 3.0), num("w", 0.01)}};
        }
        if (family == "exp_tail" || family == "exp_set") {
            ExpTermLaw p{num("alpha", 1.0), num("beta", 1.0),  num("gamma", 0.05), num("p", 3.0),
                         num("q", 3.0),     num("r", 0.5),     std::nullopt};
            if (family == "exp_tail") p.tail = ExpTail{num("chi", 1.0), num("l", 1.0 / 3.0)};
            return ScalarLaw{p};
        }
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("config: law: ") + e.what());
    }
    throw ConfigError("config: unknown law family '" + family + "'");
}

LawSpec read_law(const YAML::Node& n, const std::string& field) {
    if (n.IsMap()) return {"inline", inline_law(n)};
    const auto key = read<std::string>(n, field);
    const auto p = find_law(key);
    if (!p) throw ConfigError("config: unknown law preset '" + key + "' in field '" + field + "'");
    return {p->id, p->law};
}

void apply_sim(const YAML::Node& n, SimConfig& s) {
    if (!n || n.IsNull()) return;
    if (!n.IsMap()) throw ConfigError("config: field 'sim' must be a map");
    s.rel_tol = read_double(n, "rel_tol", "sim.rel_tol", s.rel_tol);
    s.abs_tol = read_double(n, "abs_tol", "sim.abs_tol", s.abs_tol);
    s.h_init = read_double(n, "h_init", "sim.h_init", s.h_init);
    s.h_min = read_double(n, "h_min", "sim.h_min", s.h_min);
    s.h_max = read_double(n, "h_max", "sim.h_max", s.h_max);
    s.t_end = read_double(n, "t_end", "sim.t_end", s.t_end);
    s.eps_stop = read_double(n, "eps_stop", "sim.eps_stop", s.eps_stop);
    s.record_dt = read_double(n, "record_dt", "sim.record_dt", s.record_dt);
    try {
        s.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::Bound: return "bound";
        case ExperimentKind::Compare: return "compare";
        case ExperimentKind::Backstep: return "backstep";
        case ExperimentKind::Convexity: return "convexity";
        case ExperimentKind::Reproduce: return "reproduce";
    }
    return "?";
}

std::optional<ExperimentKind> parse_kind(const std::string& s) {
    for (auto k : {ExperimentKind::Simulate, ExperimentKind::Bound, ExperimentKind::Compare, ExperimentKind::Backstep,
                   ExperimentKind::Convexity, ExperimentKind::Reproduce}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

YAML::Node load_tree(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return YAML::Load(ss.str());
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: parse error: " + std::string(e.what()));
    }
}

SimConfig with_overrides(SimConfig base, const YAML::Node& sim) {
    apply_sim(sim, base);
    return base;
}

SimConfig default_sim(ExperimentKind kind) {
    SimConfig s;
    switch (kind) {
        case ExperimentKind::Backstep: s.t_end = 20.0; break;
        case ExperimentKind::Compare: s.t_end = 8.0; break;
        default: break;
    }
    return s;
}

ExperimentConfig decode(const YAML::Node& tree, ExperimentKind kind) {
    if (!tree || tree.IsNull()) missing("schema");
    if (!tree.IsMap()) throw ConfigError("config: top level must be a map");
    if (!tree["schema"]) missing("schema");
    if (const int v = read<int>(tree["schema"], "schema"); v != kSchema)
        throw ConfigError("config: unsupported schema " + std::to_string(v) + " (expected 1)");
    if (!tree["experiment"]) missing("experiment");
    const auto name = read<std::string>(tree["experiment"], "experiment");
    const auto parsed = parse_kind(name);
    if (!parsed) throw ConfigError("config: unknown experiment '" + name + "'");
    if (*parsed != kind)
        throw ConfigError("config: experiment '" + name + "' does not match subcommand '" + to_string(kind) + "'");

    ExperimentConfig c;
    c.kind = kind;
    c.sim = default_sim(kind);
    if (tree["out"]) c.out = read<std::string>(tree["out"], "out");
    if (tree["sim"]) c.sim_node = tree["sim"];
    c.sim = with_overrides(c.sim, c.sim_node);
    if (tree["eps"]) {
        c.eps = read<double>(tree["eps"], "eps");
        c.eps_given = true;
    }
    if (!(c.eps > 0.0)) throw ConfigError("config: field 'eps' must be > 0");

    switch (kind) {
        case ExperimentKind::Simulate:
            if (!tree["law"]) missing("law");
            c.law = read_law(tree["law"], "law");
            if (!tree["x0"]) missing("x0");
            c.x0 = read_vector(tree["x0"], "x0");
            if (c.x0.size() != 1) throw ConfigError("config: field 'x0' must hold one value for a scalar law");
            break;
        case ExperimentKind::Bound:
            if (!tree["lemma"]) missing("lemma");
            c.lemma = read<std::string>(tree["lemma"], "lemma");
            c.bound_params = tree["params"] ? tree["params"] : YAML::Node(YAML::NodeType::Map);
            break;
        case ExperimentKind::Compare:
            if (!tree["x0"]) missing("x0");
            c.x0 = read_vector(tree["x0"], "x0");
            if (c.x0.size() != 1) throw ConfigError("config: field 'x0' must hold one value");
            if (tree["laws"]) {
                const YAML::Node ls = tree["laws"];
                if (!ls.IsSequence()) throw ConfigError("config: field 'laws' must be a list");
                for (std::size_t i = 0; i < ls.size(); ++i)
                    c.laws.push_back(read_law(ls[i], "laws[" + std::to_string(i) + "]"));
            } else {
                for (const auto& p : law_presets()) c.laws.push_back({p.id, p.law});
            }
            if (c.laws.empty()) throw ConfigError("config: field 'laws' is empty");
            if (tree["radius"]) c.radius = read<double>(tree["radius"], "radius");
            if (!(c.radius > 0.0)) throw ConfigError("config: field 'radius' must be > 0");
            break;
        case ExperimentKind::Backstep: {
            if (!tree["x0"]) missing("x0");
            c.x0 = read_vector(tree["x0"], "x0");
            if (c.x0.size() != 2) throw ConfigError("config: field 'x0' must hold two values for the double integrator");
            if (tree["controller"]) c.controller = read<std::string>(tree["controller"], "controller");
            if (c.controller != "example2") throw ConfigError("config: unknown controller preset '" + c.controller + "'");
            if (const YAML::Node d = tree["disturbance"]) {
                try {
                    if (d.IsScalar()) {
                        c.disturbance = disturbance_preset(read<std::string>(d, "disturbance"));
                    } else {
                        DisturbanceSpec s;
                        s.amplitude = read_double(d, "amplitude", "disturbance.amplitude", s.amplitude);
                        s.frequency = read_double(d, "frequency", "disturbance.frequency", s.frequency);
                        c.disturbance = s;
                    }
                } catch (const InvalidParams& e) {
                    throw ConfigError(std::string("config: ") + e.what());
                }
                if (c.disturbance && !(c.disturbance->frequency > 0.0))
                    throw ConfigError("config: field 'disturbance.frequency' must be > 0");
            }
            c.linear_gain = tree["linear_gain"] ? read_vector(tree["linear_gain"], "linear_gain")
                                                : presets::example2_linear_gain();
            if (c.linear_gain.size() != 2) throw ConfigError("config: field 'linear_gain' must hold two values");
            c.w = tree["w"] ? read_vector(tree["w"], "w") : std::vector<double>{0.1, 0.1};
            if (c.w.size() != 2) throw ConfigError("config: field 'w' must hold two values");
            for (double v : c.w)
                if (!(v > 0.0 && v <= 1.0)) throw ConfigError("config: entries of 'w' must lie in (0, 1]");
            break;
        }
        case ExperimentKind::Convexity: {
            if (!tree["law"]) missing("law");
            c.law = read_law(tree["law"], "law");
            if (!tree["range"]) missing("range");
            const auto r = read_vector(tree["range"], "range");
            if (r.size() != 2 || !(r[0] > 0.0 && r[0] < r[1]))
                throw ConfigError("config: field 'range' must be [lo, hi] with 0 < lo < hi");
            c.lo = r[0];
            c.hi = r[1];
            if (tree["units"]) {
                const auto u = read<std::string>(tree["units"], "units");
                if (u == "x") c.units = ConvexityUnits::State;
                else if (u == "V") c.units = ConvexityUnits::Lyapunov;
                else throw ConfigError("config: field 'units' must be 'x' or 'V'");
            }
            if (tree["tol"]) c.tol = read<double>(tree["tol"], "tol");
            if (!(c.tol > 0.0)) throw ConfigError("config: field 'tol' must be > 0");
            break;
        }
        case ExperimentKind::Reproduce:
            if (!tree["figure"]) missing("figure");
            c.figure = read<std::string>(tree["figure"], "figure");
            break;
    }
    return c;
}

}  // namespace fixtime::cli

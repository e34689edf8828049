#include "cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli/presets.hpp"
#include "fixtime/analysis.hpp"
#include "fixtime/errors.hpp"
#include "fixtime/report.hpp"
#include "fixtime/svg.hpp"

namespace fixtime::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output directory '" + dir.string() + "' is not writable");
}

void write_text(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    body(os);
    spdlog::info("wrote {}", path.string());
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, [&j](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void write_traj_csv(const fs::path& path, const Trajectory& t) {
    write_text(path, [&t](std::ostream& os) { write_csv(os, t); });
}

void write_chart(const fs::path& path, const std::string& title, std::span<const LabeledTrajectory> runs,
                 bool log_state) {
    const auto panels = trajectory_panels(runs, log_state);
    write_text(path, [&](std::ostream& os) { write_svg(os, title, panels); });
}

/// Short decimal name for x0 values in file names: 1, 10, 100, 1000, 0.5.
std::string x0_tag(double v) {
    std::string s = format_double(v);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json trajectory_summary(const Trajectory& t) {
    return {{"samples", t.size()},
            {"clamped_at", opt_json(t.clamped_at)},
            {"steps_accepted", t.stats.accepted},
            {"steps_rejected", t.stats.rejected},
            {"final_norm", t.size() ? t.norm(t.size() - 1) : 0.0}};
}

// ---------------------------------------------------------------- bound

double param(const YAML::Node& p, const char* key, double fallback) {
    const YAML::Node n = p[key];
    if (!n) return fallback;
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        throw ConfigError(std::string("config: field 'params.") + key + "' has the wrong type");
    }
}

json run_bound(const ExperimentConfig& c) {
    const YAML::Node& p = c.bound_params;
    if (c.lemma == "polyakov") {
        PolyakovParams d;
        return to_json(polyakov_bound({param(p, "alpha", d.alpha), param(p, "chi", d.chi), param(p, "p", d.p),
                                       param(p, "l", d.l), param(p, "k", d.k)}));
    }
    if (c.lemma == "lemma2") {
        Lemma2Params d;
        return to_json(lemma2_bound({param(p, "alpha", d.alpha), param(p, "beta", d.beta), param(p, "p", d.p),
                                     param(p, "q", d.q), param(p, "r", d.r), param(p, "k", d.k),
                                     param(p, "w", d.w)}));
    }
    if (c.lemma == "explemma") {
        ExpLemmaParams d;
        return to_json(explemma_bound({param(p, "alpha", d.alpha), param(p, "beta", d.beta),
                                       param(p, "gamma", d.gamma), param(p, "chi", d.chi), param(p, "p", d.p),
                                       param(p, "q", d.q), param(p, "r", d.r), param(p, "l", d.l),
                                       param(p, "k", d.k), param(p, "w", d.w)}));
    }
    if (c.lemma == "expset") {
        ExpSetParams d;
        return to_json(expset_bound({param(p, "alpha", d.alpha), param(p, "beta", d.beta), param(p, "gamma", d.gamma),
                                     param(p, "p", d.p), param(p, "q", d.q), param(p, "r", d.r), param(p, "k", d.k),
                                     param(p, "w", d.w)}));
    }
    if (c.lemma == "theorem1") {
        StageBoundParams d;
        TailBoundParams td;
        const double n = param(p, "stages", 2.0);
        if (!(n >= 1.0 && n <= 16.0 && n == static_cast<int>(n)))
            throw ConfigError("config: field 'params.stages' must be an integer in [1, 16]");
        const StageBoundParams s{param(p, "alpha", d.alpha), param(p, "beta", d.beta), param(p, "gamma", d.gamma),
                                 param(p, "p", d.p),         param(p, "q", d.q),       param(p, "r", d.r)};
        const std::vector<StageBoundParams> stages(static_cast<std::size_t>(n), s);
        const std::vector<double> w(stages.size(), param(p, "w", 0.1));
        json out = json::array();
        for (const auto& sb : theorem1_bounds(stages, {param(p, "chi", td.chi), param(p, "l", td.l)}, w))
            out.push_back(to_json(sb));
        return out;
    }
    throw ConfigError("config: unknown lemma '" + c.lemma +
                      "' (expected polyakov, lemma2, explemma, expset or theorem1)");
}

// ------------------------------------------------------------- simulate

int run_simulate(const ExperimentConfig& c, std::ostream& out) {
    ensure_dir(c.out);
    const LawSpec& spec = *c.law;
    const Trajectory t = integrate(scalar_law_system(spec.law), c.x0, c.sim);
    const std::string stem = spec.id + "_x0_" + x0_tag(c.x0[0]);
    write_traj_csv(c.out / (stem + ".csv"), t);
    const LabeledTrajectory run{spec.id, &t};
    write_chart(c.out / (stem + ".svg"), spec.id + " from x0 = " + format_double(c.x0[0]), {&run, 1}, false);

    json j = {{"law", spec.id},
              {"family", spec.law.name()},
              {"x0", c.x0},
              {"sim", to_json(c.sim)},
              {"eps", c.eps},
              {"settling_time", opt_json(settling_time(t, c.eps))},
              {"reach_and_stay", opt_json(reach_and_stay(t, c.eps))},
              {"trajectory", trajectory_summary(t)}};
    if (const auto b = reference_bound(spec.id)) {
        j["bound_check"] = to_json(check_bound(t, spec.id, *b, c.eps,
                                               spec.law.finite_time() ? SettleCriterion::Settling
                                                                      : SettleCriterion::ReachAndStay));
    }
    write_json(c.out / (stem + ".json"), j);
    out << spec.id << " x0=" << format_double(c.x0[0]) << " settling_time(" << format_double(c.eps)
        << ")=" << (j["settling_time"].is_null() ? "none" : format_double(j["settling_time"].get<double>())) << '\n';
    return kOk;
}

// -------------------------------------------------------------- compare

struct CompareResult {
    json report;
    bool solver_failure = false;
};

CompareResult run_compare_into(const std::vector<LawSpec>& laws, double x0, const SimConfig& sim, double radius,
                               const fs::path& dir, const std::string& prefix, std::ostream& out) {
    std::vector<SimJob> jobs;
    for (const auto& l : laws) jobs.push_back({l.id, scalar_law_system(l.law), {x0}, sim});
    const auto outcomes = run_batch(jobs);

    std::vector<CompareRow> rows;
    std::vector<LabeledTrajectory> runs;
    CompareResult res;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        CompareRow row{jobs[i].label, i, std::nullopt, outcomes[i].error};
        if (outcomes[i].trajectory) {
            row.time = reach_and_stay(*outcomes[i].trajectory, radius);
            write_traj_csv(dir / (prefix + "_" + jobs[i].label + ".csv"), *outcomes[i].trajectory);
            runs.push_back({jobs[i].label, &*outcomes[i].trajectory});
        }
        if (outcomes[i].solver_failure) res.solver_failure = true;
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
        if (!a.time || !b.time) return a.time.has_value() && !b.time.has_value();
        return *a.time < *b.time;
    });
    write_chart(dir / (prefix + ".svg"), "|x(t)| from x0 = " + format_double(x0), runs, true);

    res.report = {{"x0", x0}, {"radius", radius}, {"sim", to_json(sim)}, {"ranking", to_json(rows)},
                  {"partial", res.solver_failure}};
    write_json(dir / (prefix + "_compare.json"), res.report);
    for (const auto& r : rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-8s %s\n", r.id.c_str(),
                      r.time ? format_double(*r.time).c_str() : (r.error.empty() ? "none" : "failed"));
        out << buf;
    }
    return res;
}

// ------------------------------------------------------------- backstep

struct PairResult {
    json report;
    Trajectory backstep;
    Trajectory linear;
};

PairResult run_backstep_pair(const std::vector<double>& x0, const std::optional<DisturbanceSpec>& d,
                             const std::vector<double>& K, const std::vector<double>& w, const SimConfig& sim,
                             double eps) {
    const PlantSpec plant = presets::double_integrator(d);
    const Controller ctl = synthesize(plant, presets::example2_params());
    PairResult r;
    std::vector<SimJob> jobs = {{"backstep", backstep_system(ctl), x0, sim},
                                {"linear", closed_loop_rhs(plant, linear_feedback(K)), x0, sim}};
    auto outcomes = run_batch(jobs);
    for (const auto& o : outcomes) {
        if (!o.trajectory) {
            if (o.solver_failure) {
                throw SolverError(o.error, 0.0, x0);
            }
            throw InvalidParams(o.error);
        }
    }
    r.backstep = std::move(*outcomes[0].trajectory);
    r.linear = std::move(*outcomes[1].trajectory);

    const double tail_from = 5.0;
    json dist = d ? json{{"amplitude", d->amplitude}, {"frequency", d->frequency}, {"equation", d->target + 1}}
                  : json(nullptr);
    const double mb = max_norm_after(r.backstep, tail_from);
    const double ml = max_norm_after(r.linear, tail_from);
    r.report = {{"x0", x0},
                {"disturbance", dist},
                {"linear_gain", K},
                {"sim", to_json(sim)},
                {"tail_from", tail_from},
                {"backstep", trajectory_summary(r.backstep)},
                {"linear", trajectory_summary(r.linear)},
                {"backstep_max_norm_after", mb},
                {"linear_max_norm_after", ml},
                {"backstep_smaller", mb < ml}};
    if (!d) {
        json entries = json::array();
        for (const auto& e : theorem1_entry_check(ctl, x0, w, sim, eps)) entries.push_back(to_json(e));
        r.report["stage_entries"] = entries;
    }
    return r;
}

void emit_pair(const PairResult& r, const fs::path& dir, const std::string& stem, const std::string& title) {
    write_traj_csv(dir / (stem + "_backstep.csv"), r.backstep);
    write_traj_csv(dir / (stem + "_linear.csv"), r.linear);
    const LabeledTrajectory runs[] = {{"backstepping", &r.backstep}, {"linear K", &r.linear}};
    write_chart(dir / (stem + ".svg"), title, runs, false);
}

std::string describe(const std::optional<DisturbanceSpec>& d) {
    if (!d) return "no disturbance";
    return format_double(d->amplitude) + " sin(" + (d->frequency == 1.0 ? "" : format_double(d->frequency)) + "t)";
}

int run_backstep(const ExperimentConfig& c, std::ostream& out) {
    ensure_dir(c.out);
    const PairResult r = run_backstep_pair(c.x0, c.disturbance, c.linear_gain, c.w, c.sim, c.eps);
    emit_pair(r, c.out, "backstep", "x0 = (" + format_double(c.x0[0]) + ", " + format_double(c.x0[1]) + "), " +
                                        describe(c.disturbance));
    write_json(c.out / "backstep.json", r.report);
    out << "max |x| for t > 5: backstep " << format_double(r.report["backstep_max_norm_after"].get<double>())
        << ", linear " << format_double(r.report["linear_max_norm_after"].get<double>()) << '\n';
    return kOk;
}

// ------------------------------------------------------------ reproduce

bool reproduce_fig2(const ExperimentConfig& c, std::ostream& out) {
    SimConfig sim = default_sim(ExperimentKind::Compare);
    sim = with_overrides(sim, c.sim_node);
    std::vector<LawSpec> laws;
    for (const auto& p : law_presets()) laws.push_back({p.id, p.law});
    out << "fig2: time to |x| <= 0.01 from x0 = 3\n";
    return !run_compare_into(laws, 3.0, sim, 0.01, c.out, "fig2", out).solver_failure;
}

bool reproduce_fig3(const ExperimentConfig& c, std::ostream& out) {
    SimConfig sim;
    sim.t_end = 1.5;
    sim = with_overrides(sim, c.sim_node);
    const double eps = c.eps_given ? c.eps : 1e-6;
    const double radius = 0.01;
    const double x0s[] = {1.0, 10.0, 100.0, 1000.0};
    const char* ids[] = {"law31", "law32", "law33"};

    std::vector<SimJob> jobs;
    for (const char* id : ids)
        for (double x0 : x0s) jobs.push_back({std::string(id) + "_x0_" + x0_tag(x0), scalar_law_system(find_law(id)->law), {x0}, sim});
    const auto outcomes = run_batch(jobs);

    json reports = json::array();
    bool all = true, ok = true;
    std::vector<LabeledTrajectory> runs;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const std::string id = ids[i / std::size(x0s)];
        const ScalarLaw& law = find_law(id)->law;
        if (!outcomes[i].trajectory) {
            reports.push_back({{"id", id}, {"x0", {x0s[i % std::size(x0s)]}}, {"error", outcomes[i].error}});
            all = false;
            ok = ok && !outcomes[i].solver_failure;
            continue;
        }
        const Trajectory& t = *outcomes[i].trajectory;
        write_traj_csv(c.out / ("fig3_" + jobs[i].label + ".csv"), t);
        runs.push_back({jobs[i].label, &t});
        const bool ft = law.finite_time();
        const auto rep = check_bound(t, id, *reference_bound(id), ft ? eps : radius,
                                     ft ? SettleCriterion::Settling : SettleCriterion::ReachAndStay);
        all = all && rep.satisfied;
        reports.push_back(to_json(rep));
        out << "fig3: " << jobs[i].label << ' ' << to_string(rep.criterion) << '='
            << (rep.empirical ? format_double(*rep.empirical) : "none") << " bound=" << format_double(rep.bound.total)
            << (rep.satisfied ? " ok" : " VIOLATED") << '\n';
    }
    write_chart(c.out / "fig3.svg", "|x(t)| for x0 in {1, 10, 100, 1000}", runs, true);
    write_json(c.out / "fig3_settling.json", {{"reports", reports}, {"all_satisfied", all}, {"partial", !ok}});
    return ok;
}

bool reproduce_pair(const ExperimentConfig& c, std::ostream& out, const std::string& stem,
                    const std::vector<double>& x0, const std::optional<DisturbanceSpec>& d, json& report) {
    SimConfig sim = with_overrides(default_sim(ExperimentKind::Backstep), c.sim_node);
    const double eps = c.eps_given ? c.eps : 1e-6;
    try {
        const PairResult r = run_backstep_pair(x0, d, presets::example2_linear_gain(), {0.1, 0.1}, sim, eps);
        const std::string title =
            "x0 = (" + format_double(x0[0]) + ", " + format_double(x0[1]) + "), " + describe(d);
        emit_pair(r, c.out, stem, title);
        report = r.report;
        out << stem << ": max |x| for t > 5: backstep "
            << format_double(r.report["backstep_max_norm_after"].get<double>()) << ", linear "
            << format_double(r.report["linear_max_norm_after"].get<double>()) << '\n';
        return true;
    } catch (const SolverError& e) {
        report = {{"x0", x0}, {"error", e.what()}, {"partial", true}};
        out << stem << ": solver failure: " << e.what() << '\n';
        return false;
    }
}

int run_reproduce(const ExperimentConfig& c, std::ostream& out) {
    static const char* figures[] = {"fig2", "fig3", "fig4", "fig5", "fig6"};
    std::vector<std::string> todo;
    if (c.figure == "all") {
        todo.assign(std::begin(figures), std::end(figures));
    } else if (std::find(std::begin(figures), std::end(figures), c.figure) != std::end(figures)) {
        todo.push_back(c.figure);
    } else {
        throw ConfigError("config: unknown figure '" + c.figure + "' (expected fig2..fig6 or all)");
    }
    ensure_dir(c.out);

    bool ok = true;
    for (const auto& f : todo) {
        spdlog::info("reproducing {}", f);
        if (f == "fig2") ok = reproduce_fig2(c, out) && ok;
        if (f == "fig3") ok = reproduce_fig3(c, out) && ok;
        if (f == "fig4" || f == "fig5") {
            json rep;
            const std::vector<double> x0 = f == "fig4" ? std::vector<double>{2, 2} : std::vector<double>{20, 20};
            ok = reproduce_pair(c, out, f, x0, std::nullopt, rep) && ok;
            write_json(c.out / (f + ".json"), rep);
        }
        if (f == "fig6") {
            json a, b;
            ok = reproduce_pair(c, out, "fig6_sin_t", {2, 2}, disturbance_preset("sin_t"), a) && ok;
            ok = reproduce_pair(c, out, "fig6_sin_2t", {2, 2}, disturbance_preset("sin_2t"), b) && ok;
            write_json(c.out / "fig6.json", {{"sin_t", a}, {"sin_2t", b}});
        }
    }
    return ok ? kOk : kSolverFailure;
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& out) {
    switch (c.kind) {
        case ExperimentKind::Simulate: return run_simulate(c, out);
        case ExperimentKind::Bound: {
            const json j = run_bound(c);
            if (c.out != fs::path(".")) {
                ensure_dir(c.out);
                write_json(c.out / "bound.json", j);
            }
            out << j.dump(2) << '\n';
            return kOk;
        }
        case ExperimentKind::Compare: {
            ensure_dir(c.out);
            return run_compare_into(c.laws, c.x0[0], c.sim, c.radius, c.out, "compare", out).solver_failure
                       ? kSolverFailure
                       : kOk;
        }
        case ExperimentKind::Backstep: return run_backstep(c, out);
        case ExperimentKind::Convexity: {
            const auto rep = convexity_intervals(c.law->law, c.lo, c.hi, c.tol, c.units);
            json j = to_json(rep);
            j["law"] = c.law->id;
            if (c.out != fs::path(".")) {
                ensure_dir(c.out);
                write_json(c.out / ("convexity_" + c.law->id + ".json"), j);
            }
            out << j.dump(2) << '\n';
            return kOk;
        }
        case ExperimentKind::Reproduce: return run_reproduce(c, out);
    }
    return kInvalid;
}

void configure_logging() {
    if (!spdlog::get("fixtime")) spdlog::set_default_logger(spdlog::stderr_color_mt("fixtime"));
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    const char* env = std::getenv("FIXTIME_LOG");
    if (!env) return;
    const std::string v = env;
    if (v == "error") spdlog::set_level(spdlog::level::err);
    else if (v == "warn") spdlog::set_level(spdlog::level::warn);
    else if (v == "info") spdlog::set_level(spdlog::level::info);
    else if (v == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("FIXTIME_LOG='{}' not recognised; using warn", v);
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_logging();
    CLI::App app{"Fixed-time convergence laws: simulation, bounds and figure reproduction"};
    app.require_subcommand(1);

    struct Common {
        std::string config, out;
        std::optional<double> rel_tol, abs_tol, t_end, eps;
    };
    std::map<std::string, Common> common;
    auto add_common = [&common](CLI::App* sub) {
        Common& c = common[sub->get_name()];
        sub->add_option("--config", c.config, "YAML experiment file (schema: 1)");
        sub->add_option("--out", c.out, "output directory");
        sub->add_option("--rel-tol", c.rel_tol, "relative tolerance");
        sub->add_option("--abs-tol", c.abs_tol, "absolute tolerance");
        sub->add_option("--t-end", c.t_end, "final time");
        sub->add_option("--eps", c.eps, "settling threshold");
    };

    std::optional<std::string> law, lemma, disturbance, units;
    std::optional<std::vector<double>> x0, w_list, gain;
    std::optional<std::vector<std::string>> laws;
    std::optional<double> radius, lo, hi, tol;
    std::map<std::string, std::optional<double>> bparams;
    std::string figure;

    CLI::App* sim = app.add_subcommand("simulate", "simulate one scalar law");
    add_common(sim);
    sim->add_option("--law", law, "law preset id (law26..law33) or alias");
    sim->add_option("--x0", x0, "initial state");

    CLI::App* bnd = app.add_subcommand("bound", "evaluate a settling-time bound");
    add_common(bnd);
    bnd->add_option("--lemma", lemma, "polyakov | lemma2 | explemma | expset | theorem1");
    for (const char* k : {"alpha", "beta", "gamma", "chi", "p", "q", "r", "l", "k", "w", "stages"})
        bnd->add_option(std::string("--") + k, bparams[k], std::string("parameter ") + k);

    CLI::App* cmp = app.add_subcommand("compare", "rank laws by time to reach a radius");
    add_common(cmp);
    cmp->add_option("--laws", laws, "law ids (default: all eight)");
    cmp->add_option("--x0", x0, "initial state");
    cmp->add_option("--radius", radius, "target radius");

    CLI::App* bs = app.add_subcommand("backstep", "backstepping vs linear feedback on the double integrator");
    add_common(bs);
    bs->add_option("--x0", x0, "initial state (two values)");
    bs->add_option("--disturbance", disturbance, "none | sin_t | sin_2t");
    bs->add_option("--gain", gain, "linear gain K (two values)");
    bs->add_option("--w", w_list, "per-stage set radii");

    CLI::App* cvx = app.add_subcommand("convexity", "sign intervals of d2V/dt2");
    add_common(cvx);
    cvx->add_option("--law", law, "law preset id or alias");
    cvx->add_option("--lo", lo, "lower end of the scan (> 0)");
    cvx->add_option("--hi", hi, "upper end of the scan");
    cvx->add_option("--units", units, "x | V")->check(CLI::IsMember({"x", "V"}));
    cvx->add_option("--tol", tol, "relative bisection tolerance");

    CLI::App* rep = app.add_subcommand("reproduce", "regenerate a figure's data");
    add_common(rep);
    rep->add_option("figure", figure, "fig2 | fig3 | fig4 | fig5 | fig6 | all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        const ExperimentKind kind = *parse_kind(chosen->get_name());
        const Common& c = common[chosen->get_name()];

        YAML::Node tree;
        if (!c.config.empty()) {
            tree = load_tree(c.config);
        } else {
            tree["schema"] = 1;
            tree["experiment"] = to_string(kind);
        }
        if (tree.IsMap() || tree.IsNull()) {
            auto set = [&tree](const char* key, const auto& v) {
                if (v) tree[key] = *v;
            };
            auto set_sim = [&tree](const char* key, const std::optional<double>& v) {
                if (v) tree["sim"][key] = *v;
            };
            if (!c.out.empty()) tree["out"] = c.out;
            set_sim("rel_tol", c.rel_tol);
            set_sim("abs_tol", c.abs_tol);
            set_sim("t_end", c.t_end);
            set("eps", c.eps);
            set("law", law);
            set("x0", x0);
            set("lemma", lemma);
            for (const auto& [k, v] : bparams)
                if (v) tree["params"][k] = *v;
            set("laws", laws);
            set("radius", radius);
            set("disturbance", disturbance);
            set("linear_gain", gain);
            set("w", w_list);
            set("units", units);
            set("tol", tol);
            if (lo || hi) {
                const auto prev = tree["range"];
                double a = prev && prev.IsSequence() && prev.size() == 2 ? prev[0].as<double>() : 0.0;
                double b = prev && prev.IsSequence() && prev.size() == 2 ? prev[1].as<double>() : 0.0;
                if (lo) a = *lo;
                if (hi) b = *hi;
                tree["range"] = std::vector<double>{a, b};
            }
            if (!figure.empty()) tree["figure"] = figure;
        }
        const ExperimentConfig cfg = decode(tree, kind);
        spdlog::debug("running {}", to_string(kind));
        return run(cfg, out);
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << " (t = " << format_double(e.time()) << ")\n";
        return kSolverFailure;
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const YAML::Exception& e) {
        err << "config: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const std::domain_error& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const std::overflow_error& e) {
        err << e.what() << '\n';
        return kInvalid;
    }
}

}  // namespace fixtime::cli

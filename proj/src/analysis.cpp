#include "fixtime/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fixtime/errors.hpp"

namespace fixtime {

namespace {

int ddot_sign(const ScalarLaw& law, double s, ConvexityUnits units) {
    const double x = units == ConvexityUnits::State ? s : std::sqrt(2.0 * s);
    return lyap_ddot(law, x) > 0.0 ? 1 : -1;
}

double refine(const ScalarLaw& law, double a, double b, int sign_a, double tol, ConvexityUnits units) {
    for (int it = 0; it < 200 && b - a > tol * b; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (ddot_sign(law, m, units) == sign_a) {
            a = m;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::string to_string(ConvexityUnits u) { return u == ConvexityUnits::State ? "x" : "V"; }

std::string to_string(SettleCriterion c) { return c == SettleCriterion::Settling ? "settling" : "reach_and_stay"; }

ConvexityReport convexity_intervals(const ScalarLaw& law, double lo, double hi, double tol, ConvexityUnits units,
                                    std::size_t grid) {
    if (!(lo > 0.0 && lo < hi && std::isfinite(hi))) throw InvalidParams("convexity: require 0 < lo < hi");
    if (!(tol > 0.0)) throw InvalidParams("convexity: tol must be > 0");
    if (grid < 2) throw InvalidParams("convexity: grid needs at least 2 points");

    ConvexityReport rep;
    rep.units = units;
    const double llo = std::log(lo);
    const double step = (std::log(hi) - llo) / static_cast<double>(grid - 1);

    double prev = lo;
    int prev_sign = ddot_sign(law, lo, units);
    double start = lo;
    for (std::size_t i = 1; i < grid; ++i) {
        const double s = i + 1 == grid ? hi : std::exp(llo + step * static_cast<double>(i));
        const int sg = ddot_sign(law, s, units);
        if (sg != prev_sign) {
            const double sw = refine(law, prev, s, prev_sign, tol, units);
            rep.intervals.push_back({start, sw, prev_sign});
            rep.switch_points.push_back(sw);
            start = sw;
            prev_sign = sg;
        }
        prev = s;
    }
    rep.intervals.push_back({start, hi, prev_sign});
    return rep;
}

double lyap_ddot_numeric(const ScalarLaw& law, double x, double h) {
    if (h <= 0.0) h = 1e-5 * std::fabs(x);
    if (h <= 0.0) throw SingularPoint("lyap_ddot_numeric: x = 0 needs an explicit step");
    const double dvdx = (lyap_dot(law, x + h) - lyap_dot(law, x - h)) / (2.0 * h);
    return dvdx * eval_law(law, x);
}

SettlingReport check_bound(const Trajectory& traj, std::string id, const BoundReport& bound, double eps,
                           SettleCriterion criterion) {
    if (!(eps > 0.0)) throw InvalidParams("validate_bound: eps must be > 0");
    SettlingReport rep;
    rep.id = std::move(id);
    if (traj.size() > 0) {
        const auto x0 = traj.state(0);
        rep.x0.assign(x0.begin(), x0.end());
    }
    rep.bound = bound;
    rep.criterion = criterion;
    rep.eps = eps;
    rep.empirical = criterion == SettleCriterion::Settling ? settling_time(traj, eps) : reach_and_stay(traj, eps);
    if (rep.empirical) {
        rep.margin = bound.total - *rep.empirical;
        rep.satisfied = *rep.empirical <= bound.total;
    }
    return rep;
}

SettlingReport validate_bound(const System& sys, std::string id, std::span<const double> x0, const BoundReport& bound,
                              const SimConfig& cfg, double eps, SettleCriterion criterion) {
    if (!(eps > 0.0)) throw InvalidParams("validate_bound: eps must be > 0");
    return check_bound(integrate(sys, x0, cfg), std::move(id), bound, eps, criterion);
}

SettlingReport validate_bound(const ScalarLaw& law, double x0, const BoundReport& bound, const SimConfig& cfg,
                              double eps) {
    const double x[1] = {x0};
    return validate_bound(scalar_law_system(law), law.name(), x, bound, cfg, eps,
                          law.finite_time() ? SettleCriterion::Settling : SettleCriterion::ReachAndStay);
}

std::vector<CompareRow> compare_laws(std::span<const ScalarLaw> laws, double x0, const SimConfig& cfg, double radius,
                                     Execution exec) {
    if (!(radius > 0.0)) throw InvalidParams("compare_laws: radius must be > 0");
    std::vector<SimJob> jobs;
    jobs.reserve(laws.size());
    for (const auto& law : laws) jobs.push_back({law.name(), scalar_law_system(law), {x0}, cfg});

    const auto outcomes = run_batch(jobs, exec);
    std::vector<CompareRow> rows;
    rows.reserve(laws.size());
    for (std::size_t i = 0; i < laws.size(); ++i) {
        CompareRow row{jobs[i].label, i, std::nullopt, outcomes[i].error};
        if (outcomes[i].trajectory) row.time = reach_and_stay(*outcomes[i].trajectory, radius);
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
        if (!a.time || !b.time) return a.time.has_value() && !b.time.has_value();
        return *a.time < *b.time;
    });
    return rows;
}

std::optional<double> entry_time(std::span<const double> times, std::span<const double> values, double radius) {
    if (times.size() != values.size()) throw InvalidParams("entry_time: series lengths differ");
    std::size_t i = values.size();
    while (i > 0 && std::fabs(values[i - 1]) <= radius) --i;
    if (i == values.size()) return std::nullopt;
    return times[i];
}

double max_norm_after(const Trajectory& traj, double t0) {
    double m = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] > t0) m = std::max(m, traj.norm(i));
    }
    return m;
}

std::vector<StageBoundParams> stage_bound_params(const BackstepParams& params) {
    std::vector<StageBoundParams> out;
    for (const auto& s : params.stages) {
        out.push_back({s.alpha, s.beta, s.gamma, static_cast<double>(s.p), static_cast<double>(s.q), s.r});
    }
    return out;
}

std::vector<StageEntry> theorem1_entry_check(const Controller& controller, std::span<const double> x0,
                                             std::span<const double> w, const SimConfig& cfg, double eps) {
    const std::size_t n = controller.plant().order();
    if (w.size() != n) throw InvalidParams("theorem1_entry_check: one w per stage required");
    const auto sp = stage_bound_params(controller.params());
    const TailBoundParams tail{controller.params().tail.chi, controller.params().tail.l};
    const auto bounds = theorem1_bounds(sp, tail, w);

    const Trajectory traj = integrate(backstep_system(controller), x0, cfg);
    std::vector<std::vector<double>> errors(n, std::vector<double>(traj.size()));
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto e = controller.evaluate(traj.state(k)).errors;
        for (std::size_t i = 0; i < n; ++i) errors[i][k] = e[i];
    }

    std::vector<StageEntry> out;
    for (std::size_t i = 0; i < n; ++i) {
        StageEntry se;
        se.stage = i + 1;
        se.radius = i + 1 == n ? eps : w[i];
        se.entry = entry_time(traj.times, errors[i], se.radius);
        se.bounds = bounds[i];
        se.before_derived = se.entry && *se.entry <= se.bounds.derived.total;
        out.push_back(std::move(se));
    }
    return out;
}

}  // namespace fixtime

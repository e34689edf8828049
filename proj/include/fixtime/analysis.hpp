#pragma once

// Numerical validation: convexity of V along closed-loop trajectories,
// empirical settling times checked against closed-form bounds, and the
// time-to-radius comparison of several laws from a common start.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fixtime/backstep.hpp"
#include "fixtime/batch.hpp"
#include "fixtime/bounds.hpp"
#include "fixtime/laws.hpp"
#include "fixtime/sim.hpp"

namespace fixtime {

enum class ConvexityUnits { State, Lyapunov };

std::string to_string(ConvexityUnits u);

struct ConvexityInterval {
    double lo = 0.0;
    double hi = 0.0;
    /// +1 where d^2V/dt^2 > 0 (convex), -1 where it is negative.
    int sign = 0;
};

struct ConvexityReport {
    ConvexityUnits units = ConvexityUnits::State;
    std::vector<ConvexityInterval> intervals;
    std::vector<double> switch_points;
};

/// Sign of lyap_ddot scanned on a log grid of [lo, hi] (x or V = x^2/2
/// depending on `units`), sign changes refined by bisection until the
/// bracket is narrower than tol * hi_bracket. Requires 0 < lo < hi.
ConvexityReport convexity_intervals(const ScalarLaw& law, double lo, double hi, double tol,
                                    ConvexityUnits units = ConvexityUnits::State, std::size_t grid = 4000);

/// d/dt of lyap_dot along x' = u(x) by a central difference of lyap_dot in x.
/// Step h defaults to 1e-5 |x|.
double lyap_ddot_numeric(const ScalarLaw& law, double x, double h = 0.0);

enum class SettleCriterion { Settling, ReachAndStay };

std::string to_string(SettleCriterion c);

struct SettlingReport {
    std::string id;
    std::vector<double> x0;
    std::optional<double> empirical;
    BoundReport bound;
    /// empirical exists and empirical <= bound.total.
    bool satisfied = false;
    /// bound.total - empirical; nullopt when the target was never reached.
    std::optional<double> margin;
    SettleCriterion criterion = SettleCriterion::Settling;
    double eps = 0.0;
};

/// Compares an existing trajectory with bound.total.
SettlingReport check_bound(const Trajectory& traj, std::string id, const BoundReport& bound, double eps,
                           SettleCriterion criterion);

/// Simulates `sys` from x0 and compares the settling time (or the
/// reach-and-stay time for radius eps) with bound.total.
SettlingReport validate_bound(const System& sys, std::string id, std::span<const double> x0, const BoundReport& bound,
                              const SimConfig& cfg, double eps, SettleCriterion criterion);

/// Finite-time laws are checked by settling time, the others by reach-and-stay.
SettlingReport validate_bound(const ScalarLaw& law, double x0, const BoundReport& bound, const SimConfig& cfg,
                              double eps);

struct CompareRow {
    std::string id;
    /// Position in the input list.
    std::size_t index = 0;
    /// First entry into {|x| <= radius} after which the ball is never left.
    std::optional<double> time;
    std::string error;
};

/// Rows sorted by time; ties keep input order, rows without a time go last.
std::vector<CompareRow> compare_laws(std::span<const ScalarLaw> laws, double x0, const SimConfig& cfg, double radius,
                                     Execution exec = Execution::Parallel);

/// Earliest sampled time after which |values| <= radius for the rest of the
/// series; nullopt if the final sample lies outside.
std::optional<double> entry_time(std::span<const double> times, std::span<const double> values, double radius);

struct StageEntry {
    std::size_t stage = 0;
    /// Ball radius in error units: w for inner stages, eps for the last.
    double radius = 0.0;
    std::optional<double> entry;
    StageBounds bounds;
    /// entry exists and entry <= bounds.derived.total.
    bool before_derived = false;
};

/// Enters each stage error e_0 = x_1, .., e_{n-1} into its set from a given
/// start and compares with the per-stage bounds. Inner stages use
/// {|e_i| <= w_i}; the last stage uses {|e_{n-1}| <= eps}.
std::vector<StageEntry> theorem1_entry_check(const Controller& controller, std::span<const double> x0,
                                             std::span<const double> w, const SimConfig& cfg, double eps);

/// max |x(t)| over recorded samples with t > t0; 0 if there are none.
double max_norm_after(const Trajectory& traj, double t0);

/// Stage bound parameters of a backstepping design.
std::vector<StageBoundParams> stage_bound_params(const BackstepParams& params);

}  // namespace fixtime

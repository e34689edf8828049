#pragma once

// Adaptive Dormand-Prince 5(4) integration with dense output, branch-switch
// events for piecewise right-hand sides, an origin clamp for finite-time
// laws and an optional sliding surface that is held exactly once reached.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fixtime/laws.hpp"

namespace fixtime {

struct SimConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double h_init = 1e-6;
    double h_min = 1e-17;
    double h_max = 0.05;
    double t_end = 10.0;
    /// State-norm radius at which finite-time dynamics are clamped to zero.
    double eps_stop = 1e-9;
    /// Output sampling period.
    double record_dt = 1e-3;

    /// Throws InvalidParams.
    void validate() const;
};

/// amplitude * sin(frequency * t), added to state equation `target` (0-based).
struct DisturbanceSpec {
    double amplitude = 20.0;
    double frequency = 1.0;
    std::size_t target = 1;

    double operator()(double t) const;
};

using StateView = std::span<const double>;
using DerivView = std::span<double>;

/// A surface s(x) = 0 that is invariant for the exact dynamics and reached in
/// finite time. Once |s| <= eps_stop the integrator projects onto it after
/// every step and switches to the reduced right-hand side.
struct SlidingSurface {
    std::function<double(StateView)> value;
    std::function<void(std::span<double>)> project;
    std::function<void(double, StateView, DerivView)> reduced_rhs;
    std::function<double(double, StateView)> reduced_control;
};

struct System {
    std::size_t dim = 1;
    /// f(t, x) evaluated with `branch` frozen for the duration of a step.
    std::function<void(double t, StateView x, int branch, DerivView dx)> rhs;
    /// Optional branch labelling; a change of label inside a step is located
    /// and the step is cut there.
    std::function<int(StateView x)> branch_of;
    /// Optional control signal, recorded alongside the state.
    std::function<double(double t, StateView x, int branch)> control;
    /// Finite-time systems are clamped to the origin at |x| <= eps_stop.
    bool finite_time = false;
    std::optional<SlidingSurface> sliding;
};

/// Closed loop x' = u(x) of a scalar law, with its branches and clamp class.
System scalar_law_system(const ScalarLaw& law);

/// Smooth system without branches or control output.
System plain_system(std::size_t dim, std::function<void(double, StateView, DerivView)> rhs);

enum class EventKind { Switch, Clamp, Slide };

struct Event {
    double t;
    EventKind kind;
};

struct SolverStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

struct Trajectory {
    std::size_t dim = 0;
    std::vector<double> times;
    /// Row-major, dim values per sample.
    std::vector<double> states;
    std::vector<double> controls;
    std::vector<double> V;
    std::vector<double> Vdot;
    std::optional<double> clamped_at;
    std::vector<Event> events;
    SolverStats stats;

    std::size_t size() const noexcept { return times.size(); }
    std::span<const double> state(std::size_t i) const {
        return std::span<const double>(states).subspan(i * dim, dim);
    }
    double norm(std::size_t i) const;
};

/// Integrates from t = 0 to cfg.t_end. Samples at multiples of record_dt, at
/// the clamp time, and at t_end. Throws StepUnderflow or NonFiniteValue.
Trajectory integrate(const System& sys, std::span<const double> x0, const SimConfig& cfg);

/// Earliest recorded t* with |x(tau)| <= eps for every recorded tau >= t*.
std::optional<double> settling_time(const Trajectory& traj, double eps);

/// First recorded entry into {|x| <= radius}, provided the trajectory never
/// leaves the ball afterwards; nullopt otherwise.
std::optional<double> reach_and_stay(const Trajectory& traj, double radius);

/// Shortest decimal string that reads back to exactly v.
std::string format_double(double v);

/// Columns t, x1..xn, u, V, Vdot with shortest round-trip decimal formatting.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace fixtime

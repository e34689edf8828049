#pragma once

// Backstepping synthesis for the integrator chain
//   x_i' = x_{i+1} (i < n),   x_n' = sum_j a_j x_j + u (+ d(t)).
//
// With e_0 = x_1 and e_i = x_{i+1} - v_i, the virtual controls are
//   v_1 = phi_1(e_0),   v_i = phi_i(e_{i-1}) + d/dt v_{i-1},
// and the control is
//   u = phi_n(e_{n-1}) - chi |e_{n-1}|^l sign(e_{n-1}) + d/dt v_{n-1} - sum_j a_j x_j.
// Time derivatives of v_i are carried as jets: v_i is built to order n - i
// from state jets of x_{i+1}..x_n, so no derivative ever needs x_n'.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fixtime/jet.hpp"
#include "fixtime/sim.hpp"

namespace fixtime {

struct PlantSpec {
    /// a_1..a_n; the plant order is a.size().
    std::vector<double> a;
    std::optional<DisturbanceSpec> disturbance;

    std::size_t order() const noexcept { return a.size(); }
    void validate() const;
};

/// phi(e) = -alpha e^p - beta e^{-q} exp(-gamma / |e|^r), phi(0) = 0; p, q odd.
struct StageParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    int p = 3;
    int q = 3;
    double r = 0.8;

    void validate() const;
};

struct FinalTail {
    double chi = 1.0;
    double l = 1.0 / 3.0;
};

struct BackstepParams {
    std::vector<StageParams> stages;
    FinalTail tail;
    /// Per-stage |e| below which gamma / |e|^r > 700; filled by synthesize()
    /// when left empty.
    std::vector<double> underflow_cut;
};

/// |e| at which gamma / |e|^r reaches 700.
double underflow_cut(const StageParams& s);

double phi(const StageParams& s, double e);

/// Jet of phi(e(t)). Inside the underflow cut the exponential-quotient part
/// is the zero jet once its value underflows; SingularRegion is thrown if a
/// coefficient comes out non-finite.
Jet phi_jet(const StageParams& s, const Jet& e, double cut);
inline Jet phi_jet(const StageParams& s, const Jet& e) { return phi_jet(s, e, underflow_cut(s)); }

struct ControlBreakdown {
    double u = 0.0;
    /// v_1..v_{n-1}
    std::vector<double> virtual_controls;
    /// e_0 = x_1, e_1..e_{n-1}
    std::vector<double> errors;
    /// d/dt v_{n-1} (0 for n = 1).
    double vdot_last = 0.0;
    /// sum_j a_j x_j
    double drift = 0.0;
};

/// Immutable state-feedback law produced by synthesize().
class Controller {
public:
    Controller(PlantSpec plant, BackstepParams params);

    double operator()(StateView x) const { return evaluate(x).u; }
    ControlBreakdown evaluate(StateView x) const;

    /// e_{n-1}(x); depends on x_1..x_n.
    double last_error(StateView x) const { return evaluate(x).errors.back(); }
    /// v_{n-1}(x); depends on x_1..x_{n-1} only. 0 for n = 1.
    double last_virtual_control(StateView x) const;

    const PlantSpec& plant() const noexcept { return plant_; }
    const BackstepParams& params() const noexcept { return params_; }

private:
    PlantSpec plant_;
    BackstepParams params_;
};

Controller synthesize(const PlantSpec& plant, const BackstepParams& params);

using Feedback = std::function<double(StateView)>;

/// u = K x.
Feedback linear_feedback(std::vector<double> K);

/// x_i' = x_{i+1}, x_n' = sum a_j x_j + u(x) + d(t).
System closed_loop_rhs(const PlantSpec& plant, Feedback u);

/// Closed loop of a synthesized controller. Without a disturbance the final
/// error surface e_{n-1} = 0 is invariant and is held once reached.
System backstep_system(const Controller& controller);

namespace presets {
/// Double integrator with optional amplitude * sin(frequency t) on x_2'.
PlantSpec double_integrator(std::optional<DisturbanceSpec> d = std::nullopt);
/// alpha = beta = gamma = chi = 1, p = q = 3, r = 0.8, l = 1/3 for both stages.
BackstepParams example2_params();
std::vector<double> example2_linear_gain();
}  // namespace presets

}  // namespace fixtime

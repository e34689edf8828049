#pragma once

// Scalar control laws for the first-order integrator x' = u, the quadratic
// Lyapunov function V = x^2 / 2, and its first two time derivatives along
// closed-loop trajectories.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fixtime {

/// |x|^a sign(x). Throws InvalidExponent for a <= 0.
double spow(double x, double a);

/// Heaviside step with the closed branch at zero: 1 if s >= 0, else 0.
int heaviside(double s);

/// Signed exponential-quotient term  sign(x) * beta / |x|^q * exp(-gamma / |x|^r),
/// evaluated in log space. Exactly 0 at x = 0 and whenever the exponent
/// underflows double precision.
double exp_quotient(double beta, double gamma, double q, double r, double x);

/// d/dx of exp_quotient (an even function). 0 at x = 0.
double exp_quotient_slope(double beta, double gamma, double q, double r, double x);

struct Linear {
    double gain = 1.0;
};

struct Relay {
    double gain = 1.0;
};

struct FracPower {
    double exponent = 1.0 / 3.0;
};

struct PolyakovFT {
    double alpha = 1.0;
    double chi = 1.0;
    double p = 3.0;
    double l = 1.0 / 3.0;
};

/// u = -x (1 + |ln|x||).
struct HyperExp {};

/// u = -alpha spow(x,p) - beta |x|^{-q 1(1-|x|) + (q+r) 1(w-|x|)} sign(x).
struct HeavisideExpLaw {
    double alpha = 1.0;
    double beta = 1.0;
    double p = 3.0;
    double q = 3.0;
    double r = 1.0 / 3.0;
    double w = 0.01;
};

struct ExpTail {
    double chi = 1.0;
    double l = 1.0 / 3.0;
};

/// u = -alpha spow(x,p) - exp_quotient(beta,gamma,q,r,x) [- chi spow(x,l)].
struct ExpTermLaw {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.05;
    double p = 3.0;
    double q = 3.0;
    double r = 0.5;
    std::optional<ExpTail> tail;
};

using LawParams =
    std::variant<Linear, Relay, FracPower, PolyakovFT, HyperExp, HeavisideExpLaw, ExpTermLaw>;

enum class LawFamily { Linear, Relay, FracPower, PolyakovFT, HyperExp, HeavisideExp, ExpTerm };

/// A validated scalar control law. Construction rejects out-of-range fields.
class ScalarLaw {
public:
    explicit ScalarLaw(LawParams params);

    static ScalarLaw linear(double gain = 1.0) { return ScalarLaw{Linear{gain}}; }
    static ScalarLaw relay(double gain = 1.0) { return ScalarLaw{Relay{gain}}; }
    static ScalarLaw frac_power(double exponent = 1.0 / 3.0) { return ScalarLaw{FracPower{exponent}}; }

    const LawParams& params() const noexcept { return params_; }
    LawFamily family() const noexcept;

    /// Finite-time laws reach the origin in finite time and are eligible for
    /// the settling clamp in the integrator.
    bool finite_time() const noexcept;

    /// Short identifier, e.g. "heaviside_exp" or "exp_tail".
    std::string name() const;

private:
    LawParams params_;
};

/// The eight laws of the first-order comparison, in their canonical order
/// (linear, relay, x^{1/3}, Polyakov, hyperexponential, Heaviside-exponent,
/// exponential with tail, exponential without tail).
namespace presets {
ScalarLaw law26_linear();
ScalarLaw law27_relay();
ScalarLaw law28_frac_power();
ScalarLaw law29_polyakov();
ScalarLaw law30_hyperexp();
ScalarLaw law31_heaviside_exp();
ScalarLaw law32_exp_tail();
ScalarLaw law33_exp_set();
}  // namespace presets

/// Control value u(x).
double eval_law(const ScalarLaw& law, double x);

/// Branch label of x for piecewise-defined laws: sign(x) * (band + 1), or 0
/// at the origin. Bands split |x| at the switching magnitudes of the law.
int law_branch(const ScalarLaw& law, double x);

/// u(x) with the branch frozen, i.e. the smooth continuation of the given
/// branch's formula to x. Used by the integrator inside one step.
double eval_law_branch(const ScalarLaw& law, double x, int branch);

/// Analytic du/dx away from the origin and switching magnitudes.
/// Throws SingularPoint at x = 0 for laws whose slope is unbounded there.
double law_slope(const ScalarLaw& law, double x);

double lyap(double x);
double lyap_dot(const ScalarLaw& law, double x);

/// d^2V/dt^2 = (u + x du/dx) u along x' = u(x). Throws SingularPoint at x = 0
/// for every law except Linear.
double lyap_ddot(const ScalarLaw& law, double x);

}  // namespace fixtime

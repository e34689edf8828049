#pragma once

#include <functional>
#include <span>

namespace fixtime {

struct QuadratureResult {
    double value = 0.0;
    double rel_error = 0.0; ///< estimated relative error
};

/// Adaptive 7/15-point Gauss-Kronrod on [a, b], split at `breakpoints`.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                              std::span<const double> breakpoints = {}, double rel_tol = 1e-11);

/// Settling time of V' = -g(V) from V0: the integral of dV / g(V) over
/// (lower_cutoff, V0]. With lower_cutoff == 0 the integrand's endpoint
/// singularity at 0 is handled by geometric splitting toward the origin
/// plus a ratio-based tail estimate; a tail that does not contract (an
/// asymptotic-only decay) raises DivergentIntegral. Throws InvalidParams if g is
/// not positive on the sampled range.
QuadratureResult quadrature_settling_oracle(const std::function<double(double)>& g, double V0,
                                            std::span<const double> breakpoints = {}, double lower_cutoff = 0.0);

} // namespace fixtime

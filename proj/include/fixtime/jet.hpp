#pragma once

// Truncated univariate Taylor series in time. A jet of order K stores
// c_k = f^(k)(t) / k!  for k = 0..K. Arithmetic never reads past index K and
// results keep the order of their inputs.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fixtime {

class Jet {
public:
    /// Zero jet of the given order.
    explicit Jet(std::size_t order = 0) : c_(order + 1, 0.0) {}
    explicit Jet(std::vector<double> coeffs);
    Jet(std::initializer_list<double> coeffs) : Jet(std::vector<double>(coeffs)) {}

    static Jet constant(double value, std::size_t order);
    /// value + t
    static Jet variable(double value, std::size_t order);

    std::size_t order() const noexcept { return c_.size() - 1; }
    double operator[](std::size_t k) const { return c_[k]; }
    double& operator[](std::size_t k) { return c_[k]; }
    std::span<const double> coeffs() const noexcept { return c_; }

    /// k-th time derivative, c_k * k!.
    double derivative(std::size_t k) const;

    bool is_zero() const noexcept;

private:
    std::vector<double> c_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, double s);
Jet jet_add_scalar(const Jet& a, double s);

Jet jet_exp(const Jet& a);
/// Requires a_0 > 0.
Jet jet_log(const Jet& a);
/// Requires a_0 != 0.
Jet jet_recip(const Jet& a);
/// a^alpha. Non-integer alpha requires a_0 > 0; negative integer alpha
/// requires a_0 != 0; non-negative integer alpha is total.
Jet jet_pow(const Jet& a, double alpha);
/// a^n by repeated squaring; total for every a.
Jet jet_ipow(const Jet& a, unsigned n);
/// |a|^alpha sign(a_0), requires a_0 != 0.
Jet jet_spow(const Jet& a, double alpha);

/// Time derivative: order drops by one. Requires order >= 1.
Jet jet_differentiate(const Jet& a);
/// Keeps coefficients 0..order. Requires order <= a.order().
Jet jet_truncate(const Jet& a, std::size_t order);

/// Jet of x_i along the integrator chain x_j' = x_{j+1}: c_k = x_{i+k} / k!.
/// Components are 0-based; requires i + order < x.size().
Jet state_jet(std::span<const double> x, std::size_t i, std::size_t order);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator*(const Jet& a, double s) { return jet_scale(a, s); }
inline Jet operator*(double s, const Jet& a) { return jet_scale(a, s); }
inline Jet operator-(const Jet& a) { return jet_scale(a, -1.0); }

}  // namespace fixtime

#include "fixtime/jet.hpp"

#include <cmath>
#include <string>

#include "fixtime/errors.hpp"

namespace fixtime {

namespace {

void same_order(const Jet& a, const Jet& b, const char* who) {
    if (a.order() != b.order()) {
        throw OrderMismatch(std::string(who) + ": orders " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()) + " differ");
    }
}

bool is_integer(double v) { return std::isfinite(v) && std::fabs(v) < 2147483647.0 && v == std::round(v); }

// a^alpha for a_0 > 0 via  k a_0 b_k = sum_{j=1..k} ((alpha+1) j - k) a_j b_{k-j}.
Jet positive_pow(const Jet& a, double alpha) {
    const std::size_t K = a.order();
    Jet b(K);
    b[0] = std::pow(a[0], alpha);
    for (std::size_t k = 1; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            s += ((alpha + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
        }
        b[k] = s / (static_cast<double>(k) * a[0]);
    }
    return b;
}

}  // namespace

Jet::Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

Jet Jet::constant(double value, std::size_t order) {
    Jet j(order);
    j[0] = value;
    return j;
}

Jet Jet::variable(double value, std::size_t order) {
    Jet j(order);
    j[0] = value;
    if (order >= 1) j[1] = 1.0;
    return j;
}

double Jet::derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c_.at(k) * f;
}

bool Jet::is_zero() const noexcept {
    for (double v : c_) {
        if (v != 0.0) return false;
    }
    return true;
}

Jet jet_add(const Jet& a, const Jet& b) {
    same_order(a, b, "jet_add");
    Jet r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
    return r;
}

Jet jet_sub(const Jet& a, const Jet& b) {
    same_order(a, b, "jet_sub");
    Jet r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
    return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    same_order(a, b, "jet_mul");
    const std::size_t K = a.order();
    Jet r(K);
    for (std::size_t k = 0; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
        r[k] = s;
    }
    return r;
}

Jet jet_scale(const Jet& a, double s) {
    Jet r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r[k] = a[k] * s;
    return r;
}

Jet jet_add_scalar(const Jet& a, double s) {
    Jet r = a;
    r[0] += s;
    return r;
}

Jet jet_exp(const Jet& a) {
    const std::size_t K = a.order();
    Jet g(K);
    g[0] = std::exp(a[0]);
    for (std::size_t k = 1; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * g[k - j];
        g[k] = s / static_cast<double>(k);
    }
    return g;
}

Jet jet_log(const Jet& a) {
    if (!(a[0] > 0.0)) throw ZeroConstantTerm("jet_log: constant term must be > 0");
    const std::size_t K = a.order();
    Jet b(K);
    b[0] = std::log(a[0]);
    for (std::size_t k = 1; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * b[j] * a[k - j];
        b[k] = (a[k] - s / static_cast<double>(k)) / a[0];
    }
    return b;
}

Jet jet_recip(const Jet& a) {
    if (a[0] == 0.0) throw ZeroConstantTerm("jet_recip: constant term is zero");
    const std::size_t K = a.order();
    Jet b(K);
    b[0] = 1.0 / a[0];
    for (std::size_t k = 1; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
        b[k] = -s * b[0];
    }
    return b;
}

Jet jet_ipow(const Jet& a, unsigned n) {
    Jet result = Jet::constant(1.0, a.order());
    Jet base = a;
    while (n > 0) {
        if (n & 1u) result = jet_mul(result, base);
        n >>= 1u;
        if (n > 0) base = jet_mul(base, base);
    }
    return result;
}

Jet jet_pow(const Jet& a, double alpha) {
    if (is_integer(alpha)) {
        if (alpha >= 0.0) return jet_ipow(a, static_cast<unsigned>(alpha));
        if (a[0] == 0.0) throw ZeroConstantTerm("jet_pow: negative power of a jet with zero constant term");
        return jet_recip(jet_ipow(a, static_cast<unsigned>(-alpha)));
    }
    if (!(a[0] > 0.0)) throw ZeroConstantTerm("jet_pow: non-integer power requires a positive constant term");
    return positive_pow(a, alpha);
}

Jet jet_spow(const Jet& a, double alpha) {
    if (a[0] == 0.0) throw ZeroConstantTerm("jet_spow: constant term is zero");
    if (a[0] > 0.0) return positive_pow(a, alpha);
    return jet_scale(positive_pow(jet_scale(a, -1.0), alpha), -1.0);
}

Jet jet_differentiate(const Jet& a) {
    if (a.order() == 0) throw OrderTooHigh("jet_differentiate: order-0 jet has no derivative coefficients");
    Jet r(a.order() - 1);
    for (std::size_t k = 0; k < a.order(); ++k) r[k] = static_cast<double>(k + 1) * a[k + 1];
    return r;
}

Jet jet_truncate(const Jet& a, std::size_t order) {
    if (order > a.order()) throw OrderMismatch("jet_truncate: target order exceeds jet order");
    Jet r(order);
    for (std::size_t k = 0; k <= order; ++k) r[k] = a[k];
    return r;
}

Jet state_jet(std::span<const double> x, std::size_t i, std::size_t order) {
    if (i + order >= x.size()) {
        throw OrderTooHigh("state_jet: component " + std::to_string(i) + " at order " + std::to_string(order) +
                           " needs derivatives beyond the state of size " + std::to_string(x.size()));
    }
    Jet j(order);
    double fact = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
        if (k >= 2) fact *= static_cast<double>(k);
        j[k] = x[i + k] / fact;
    }
    return j;
}

}  // namespace fixtime

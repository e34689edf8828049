#include "fixtime/quadrature.hpp"

#include "fixtime/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace fixtime {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double value, error;
};

Piece gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXgk[j];
        const double fs = f(c - dx) + f(c + dx);
        kron += kWgk[j] * fs;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * fs;
    }
    return {kron * hl, std::abs((kron - gauss) * hl)};
}

Piece adapt(const std::function<double(double)>& f, double a, double b, double abs_tol, int depth)
{
    const Piece whole = gk15(f, a, b);
    if (whole.error <= abs_tol || depth >= 60 || !(b - a > 4 * std::numeric_limits<double>::epsilon() * std::abs(b)))
        return whole;
    const double m = 0.5 * (a + b);
    const Piece l = adapt(f, a, m, 0.5 * abs_tol, depth + 1);
    const Piece r = adapt(f, m, b, 0.5 * abs_tol, depth + 1);
    return {l.value + r.value, l.error + r.error};
}

} // namespace

QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                              std::span<const double> breakpoints, double rel_tol)
{
    std::vector<double> cuts{a};
    for (double bp : breakpoints)
        if (bp > a && bp < b)
            cuts.push_back(bp);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Piece coarse = gk15(f, cuts[i], cuts[i + 1]);
        const double tol = std::max(rel_tol * std::abs(coarse.value), 1e-300);
        const Piece p = adapt(f, cuts[i], cuts[i + 1], tol, 0);
        value += p.value;
        error += p.error;
    }
    return {value, value != 0.0 ? error / std::abs(value) : error};
}

QuadratureResult quadrature_settling_oracle(const std::function<double(double)>& g, double V0,
                                            std::span<const double> breakpoints, double lower_cutoff)
{
    if (!(V0 > 0.0))
        throw InvalidParams("quadrature oracle: V0 must be positive");
    if (lower_cutoff < 0.0 || lower_cutoff >= V0)
        throw InvalidParams("quadrature oracle: cutoff must lie in [0, V0)");

    auto inv = [&g](double V) {
        const double gv = g(V);
        if (!(gv > 0.0))
            throw InvalidParams("quadrature oracle: decay rate must be positive on (0, V0]");
        return 1.0 / gv;
    };

    if (lower_cutoff > 0.0) {
        return integrate_gk(inv, lower_cutoff, V0, breakpoints);
    }

    // Geometric pieces [V0 2^-(m+1), V0 2^-m] toward the singular endpoint.
    double total = 0.0, err = 0.0, prev = 0.0;
    double hi = V0;
    constexpr int kMaxPieces = 1000;
    for (int m = 0; m < kMaxPieces && hi > 1e-290; ++m) {
        const double lo = 0.5 * hi;
        const auto piece = integrate_gk(inv, lo, hi, breakpoints);
        total += piece.value;
        err += piece.rel_error * piece.value;
        if (m >= 8 && prev > 0.0) {
            const double ratio = piece.value / prev;
            if (ratio < 0.99) {
                const double tail = piece.value * ratio / (1.0 - ratio);
                if (tail <= 1e-10 * total) {
                    total += tail;
                    err += tail;
                    return {total, err / total};
                }
            }
        }
        prev = piece.value;
        hi = lo;
    }
    throw DivergentIntegral("quadrature oracle: settling integral does not converge at V -> 0 (asymptotic decay)");
}

} // namespace fixtime

#include "fixtime/laws.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fixtime/errors.hpp"

namespace fixtime {

namespace {

// exp(x) is exactly representable only above this (subnormals excluded).
constexpr double kExpUnderflow = -745.0;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double sign(double x) { return (x > 0.0) - (x < 0.0); }

// |x|^a sign(x) for any real a, x != 0 when a <= 0.
double signed_power(double x, double a) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(x), a), x);
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidParams(what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool unit_open(double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; }

void validate(const LawParams& params) {
    std::visit(overloaded{
                   [](const Linear& p) { require(positive(p.gain), "linear: gain must be > 0"); },
                   [](const Relay& p) { require(positive(p.gain), "relay: gain must be > 0"); },
                   [](const FracPower& p) {
                       require(unit_open(p.exponent), "frac_power: exponent must lie in (0,1)");
                   },
                   [](const PolyakovFT& p) {
                       require(positive(p.alpha) && positive(p.chi), "polyakov: alpha, chi must be > 0");
                       require(std::isfinite(p.p) && p.p > 1.0, "polyakov: p must be > 1");
                       require(unit_open(p.l), "polyakov: l must lie in (0,1)");
                   },
                   [](const HyperExp&) {},
                   [](const HeavisideExpLaw& p) {
                       require(positive(p.alpha) && positive(p.beta),
                               "heaviside_exp: alpha, beta must be > 0");
                       require(positive(p.p) && positive(p.q) && positive(p.r),
                               "heaviside_exp: p, q, r must be > 0");
                       require(unit_open(p.w), "heaviside_exp: w must lie in (0,1)");
                   },
                   [](const ExpTermLaw& p) {
                       require(positive(p.alpha) && positive(p.beta) && positive(p.gamma),
                               "exp_term: alpha, beta, gamma must be > 0");
                       require(positive(p.p) && positive(p.q) && positive(p.r),
                               "exp_term: p, q, r must be > 0");
                       if (p.tail) {
                           require(positive(p.tail->chi), "exp_term: tail chi must be > 0");
                           require(unit_open(p.tail->l), "exp_term: tail l must lie in (0,1)");
                       }
                   },
               },
               params);
}

// Power of |x| used by the Heaviside-exponent law in each band.
double heaviside_power(const HeavisideExpLaw& p, double ax) {
    return -p.q * heaviside(1.0 - ax) + (p.q + p.r) * heaviside(p.w - ax);
}

int heaviside_band(const HeavisideExpLaw& p, double ax) {
    if (ax > 1.0) return 0;
    if (ax > p.w) return 1;
    return 2;
}

double heaviside_band_power(const HeavisideExpLaw& p, int band) {
    switch (band) {
        case 0: return 0.0;
        case 1: return -p.q;
        default: return p.r;
    }
}

}  // namespace

double spow(double x, double a) {
    if (!(a > 0.0)) throw InvalidExponent("spow: exponent must be > 0");
    return signed_power(x, a);
}

int heaviside(double s) { return s >= 0.0 ? 1 : 0; }

double exp_quotient(double beta, double gamma, double q, double r, double x) {
    if (x == 0.0) return 0.0;
    const double a = std::fabs(x);
    const double expo = std::log(beta) - q * std::log(a) - gamma * std::pow(a, -r);
    if (expo < kExpUnderflow) return 0.0;
    return std::copysign(std::exp(expo), x);
}

double exp_quotient_slope(double beta, double gamma, double q, double r, double x) {
    if (x == 0.0) return 0.0;
    const double a = std::fabs(x);
    const double inv_r = std::pow(a, -r);
    const double expo = std::log(beta) - (q + 1.0) * std::log(a) - gamma * inv_r;
    if (expo < kExpUnderflow) return 0.0;
    return std::exp(expo) * (gamma * r * inv_r - q);
}

ScalarLaw::ScalarLaw(LawParams params) : params_(std::move(params)) { validate(params_); }

LawFamily ScalarLaw::family() const noexcept {
    return static_cast<LawFamily>(params_.index());
}

bool ScalarLaw::finite_time() const noexcept {
    return std::visit(overloaded{
                          [](const Linear&) { return false; },
                          [](const HyperExp&) { return false; },
                          [](const ExpTermLaw& p) { return p.tail.has_value(); },
                          [](const auto&) { return true; },
                      },
                      params_);
}

std::string ScalarLaw::name() const {
    return std::visit(overloaded{
                          [](const Linear&) { return std::string("linear"); },
                          [](const Relay&) { return std::string("relay"); },
                          [](const FracPower&) { return std::string("frac_power"); },
                          [](const PolyakovFT&) { return std::string("polyakov"); },
                          [](const HyperExp&) { return std::string("hyperexp"); },
                          [](const HeavisideExpLaw&) { return std::string("heaviside_exp"); },
                          [](const ExpTermLaw& p) {
                              return std::string(p.tail ? "exp_tail" : "exp_set");
                          },
                      },
                      params_);
}

namespace presets {
ScalarLaw law26_linear() { return ScalarLaw{Linear{1.0}}; }
ScalarLaw law27_relay() { return ScalarLaw{Relay{1.0}}; }
ScalarLaw law28_frac_power() { return ScalarLaw{FracPower{1.0 / 3.0}}; }
ScalarLaw law29_polyakov() { return ScalarLaw{PolyakovFT{1.0, 1.0, 3.0, 1.0 / 3.0}}; }
ScalarLaw law30_hyperexp() { return ScalarLaw{HyperExp{}}; }
ScalarLaw law31_heaviside_exp() {
    return ScalarLaw{HeavisideExpLaw{1.0, 1.0, 3.0, 3.0, 1.0 / 3.0, 0.01}};
}
ScalarLaw law32_exp_tail() {
    return ScalarLaw{ExpTermLaw{1.0, 1.0, 0.05, 3.0, 3.0, 0.5, ExpTail{1.0, 1.0 / 3.0}}};
}
ScalarLaw law33_exp_set() {
    return ScalarLaw{ExpTermLaw{1.0, 1.0, 0.05, 3.0, 3.0, 0.5, std::nullopt}};
}
}  // namespace presets

double eval_law(const ScalarLaw& law, double x) {
    if (x == 0.0) return 0.0;
    return std::visit(
        overloaded{
            [x](const Linear& p) { return -p.gain * x; },
            [x](const Relay& p) { return -p.gain * sign(x); },
            [x](const FracPower& p) { return -signed_power(x, p.exponent); },
            [x](const PolyakovFT& p) {
                return -p.alpha * signed_power(x, p.p) - p.chi * signed_power(x, p.l);
            },
            [x](const HyperExp&) { return -x * (1.0 + std::fabs(std::log(std::fabs(x)))); },
            [x](const HeavisideExpLaw& p) {
                const double ax = std::fabs(x);
                return -p.alpha * signed_power(x, p.p) -
                       p.beta * signed_power(x, heaviside_power(p, ax));
            },
            [x](const ExpTermLaw& p) {
                double u = -p.alpha * signed_power(x, p.p) - exp_quotient(p.beta, p.gamma, p.q, p.r, x);
                if (p.tail) u -= p.tail->chi * signed_power(x, p.tail->l);
                return u;
            },
        },
        law.params());
}

int law_branch(const ScalarLaw& law, double x) {
    if (x == 0.0) return 0;
    const double ax = std::fabs(x);
    const int band = std::visit(overloaded{
                                    [ax](const HyperExp&) { return ax > 1.0 ? 0 : 1; },
                                    [ax](const HeavisideExpLaw& p) { return heaviside_band(p, ax); },
                                    [](const auto&) { return 0; },
                                },
                                law.params());
    return x > 0.0 ? band + 1 : -(band + 1);
}

double eval_law_branch(const ScalarLaw& law, double x, int branch) {
    if (branch == 0) return eval_law(law, x);
    const double s = branch > 0 ? 1.0 : -1.0;
    const int band = std::abs(branch) - 1;
    return std::visit(
        overloaded{
            [s](const Relay& p) { return -p.gain * s; },
            [x, band](const HyperExp&) {
                if (x == 0.0) return 0.0;
                const double lg = std::log(std::fabs(x));
                return band == 0 ? -x * (1.0 + lg) : -x * (1.0 - lg);
            },
            [x, s, band](const HeavisideExpLaw& p) {
                const double poly = -p.alpha * signed_power(x, p.p);
                if (band == 0) return poly - p.beta * s;
                return poly - p.beta * signed_power(x, heaviside_band_power(p, band));
            },
            [&law, x](const auto&) { return eval_law(law, x); },
        },
        law.params());
}

double law_slope(const ScalarLaw& law, double x) {
    if (x == 0.0) {
        if (law.family() == LawFamily::Linear) return -std::get<Linear>(law.params()).gain;
        throw SingularPoint("law_slope: du/dx is singular at the origin for " + law.name());
    }
    const double ax = std::fabs(x);
    return std::visit(
        overloaded{
            [](const Linear& p) { return -p.gain; },
            [](const Relay&) { return 0.0; },
            [ax](const FracPower& p) { return -p.exponent * std::pow(ax, p.exponent - 1.0); },
            [ax](const PolyakovFT& p) {
                return -p.alpha * p.p * std::pow(ax, p.p - 1.0) - p.chi * p.l * std::pow(ax, p.l - 1.0);
            },
            [ax](const HyperExp&) {
                const double lg = std::log(ax);
                return ax > 1.0 ? -(2.0 + lg) : lg;
            },
            [ax](const HeavisideExpLaw& p) {
                const double e = heaviside_power(p, ax);
                return -p.alpha * p.p * std::pow(ax, p.p - 1.0) - p.beta * e * std::pow(ax, e - 1.0);
            },
            [x, ax](const ExpTermLaw& p) {
                double d = -p.alpha * p.p * std::pow(ax, p.p - 1.0) -
                           exp_quotient_slope(p.beta, p.gamma, p.q, p.r, x);
                if (p.tail) d -= p.tail->chi * p.tail->l * std::pow(ax, p.tail->l - 1.0);
                return d;
            },
        },
        law.params());
}

double lyap(double x) { return 0.5 * x * x; }

double lyap_dot(const ScalarLaw& law, double x) { return x * eval_law(law, x); }

double lyap_ddot(const ScalarLaw& law, double x) {
    const double u = eval_law(law, x);
    const double du = law_slope(law, x);
    return (u + x * du) * u;
}

}  // namespace fixtime

#include "catch_amalgamated.hpp"

#include <cmath>

#include "fixtime/analysis.hpp"
#include "fixtime/errors.hpp"
#include "fixtime/laws.hpp"
#include "support.hpp"

using namespace fixtime;
using Catch::Approx;

TEST_CASE("spow is the signed power", "[laws]") {
    CHECK(spow(8.0, 1.0 / 3.0) == Approx(2.0).epsilon(1e-15));
    CHECK(spow(0.0, 0.8) == 0.0);
    CHECK(spow(-0.5, 3.0) == -0.125);
    CHECK(spow(-8.0, 1.0 / 3.0) == Approx(-2.0).epsilon(1e-15));
    CHECK_THROWS_AS(spow(2.0, 0.0), InvalidExponent);
    CHECK_THROWS_AS(spow(2.0, -1.0), InvalidExponent);
}

TEST_CASE("heaviside closes the branch at zero", "[laws]") {
    CHECK(heaviside(0.5) == 1);
    CHECK(heaviside(-0.5) == 0);
    CHECK(heaviside(0.0) == 1);
}

TEST_CASE("law values at hand-evaluated points", "[laws]") {
    const ScalarLaw h = presets::law31_heaviside_exp();
    CHECK(eval_law(h, 2.0) == Approx(-9.0).epsilon(1e-15));
    CHECK(eval_law(h, 0.5) == Approx(-8.125).epsilon(1e-15));

    const ScalarLaw e = presets::law32_exp_tail();
    CHECK(eval_law(e, 0.0) == 0.0);
    CHECK(eval_law(e, 1.0) == Approx(-2.0 - std::exp(-0.05)).epsilon(1e-15));
    CHECK(eval_law(e, 1.0) == Approx(-2.95123).margin(1e-5));

    for (const auto& law : testing::example_laws()) CHECK(eval_law(law, 0.0) == 0.0);
}

TEST_CASE("construction rejects out-of-range parameters", "[laws]") {
    CHECK_THROWS_AS(ScalarLaw(Linear{0.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(Relay{-1.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(FracPower{1.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(FracPower{0.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(PolyakovFT{1.0, 1.0, 1.0, 0.5}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(PolyakovFT{1.0, 1.0, 3.0, 1.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(HeavisideExpLaw{1, 1, 3, 3, 1.0 / 3.0, 1.0}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(HeavisideExpLaw{1, 1, 3, 3, 0.0, 0.01}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(ExpTermLaw{1, 1, -0.05, 3, 3, 0.5, std::nullopt}), InvalidParams);
    CHECK_THROWS_AS(ScalarLaw(ExpTermLaw{1, 1, 0.05, 3, 3, 0.5, ExpTail{1.0, 1.0}}), InvalidParams);
    CHECK_NOTHROW(ScalarLaw(ExpTermLaw{1, 1, 0.05, 3, 3, 0.5, ExpTail{1.0, 0.5}}));
}

TEST_CASE("Lyapunov derivatives at reference points", "[laws]") {
    const ScalarLaw lin = ScalarLaw::linear(1.0);
    CHECK(lyap(1.0) == 0.5);
    CHECK(lyap_dot(lin, 1.0) == -1.0);
    CHECK(lyap_ddot(lin, 1.0) == Approx(2.0));
    CHECK(lyap_ddot(lin, 1.0) == Approx(4.0 * lyap(1.0)));
    CHECK(lyap_dot(presets::law29_polyakov(), 1.0) == Approx(-2.0).epsilon(1e-15));

    for (const auto& law : testing::example_laws()) {
        CHECK(lyap(0.0) == 0.0);
        CHECK(lyap_dot(law, 0.0) == 0.0);
        if (law.family() != LawFamily::Linear) CHECK_THROWS_AS(lyap_ddot(law, 0.0), SingularPoint);
    }
}

TEST_CASE("finite-time classification", "[laws]") {
    const bool expected[] = {false, true, true, true, false, true, true, false};
    const auto laws = testing::example_laws();
    for (std::size_t i = 0; i < laws.size(); ++i) CHECK(laws[i].finite_time() == expected[i]);
}

TEST_CASE("every law is odd", "[laws][property]") {
    auto rng = testing::make_rng(26);
    for (const auto& law : testing::example_laws()) {
        for (int i = 0; i < 10000; ++i) {
            const double x = testing::uniform(rng, -1e3, 1e3);
            const double a = eval_law(law, x);
            const double b = eval_law(law, -x);
            INFO(law.name() << " x = " << x);
            REQUIRE(std::fabs(a + b) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(a));
        }
    }
}

TEST_CASE("every law dissipates V away from the origin", "[laws][property]") {
    auto rng = testing::make_rng(27);
    for (const auto& law : testing::example_laws()) {
        for (int i = 0; i < 10000; ++i) {
            const double x = testing::signed_log_uniform(rng, 1e-8, 1e3);
            INFO(law.name() << " x = " << x);
            REQUIRE(lyap_dot(law, x) < 0.0);
        }
    }
}

TEST_CASE("analytic second derivative of V matches finite differences", "[laws][property]") {
    auto rng = testing::make_rng(28);
    // Switching magnitudes of the piecewise laws, where V'' jumps.
    const double kinks[] = {0.01, 1.0};
    for (const auto& law : testing::example_laws()) {
        int checked = 0;
        while (checked < 2000) {
            const double x = testing::signed_log_uniform(rng, 1e-3, 1e2);
            bool near_kink = false;
            for (double k : kinks) near_kink = near_kink || std::fabs(std::fabs(x) - k) < 1e-3 * k;
            if (near_kink) continue;
            const double a = lyap_ddot(law, x);
            const double n = lyap_ddot_numeric(law, x);
            INFO(law.name() << " x = " << x << " analytic " << a << " numeric " << n);
            REQUIRE(testing::close(n, a, 1e-6, 1e-4));
            ++checked;
        }
    }
}

TEST_CASE("Heaviside-exponent law decodes its three regions", "[laws]") {
    const ScalarLaw h = presets::law31_heaviside_exp();
    // u + x^3 = -|x|^e sign(x), with e = 0 above 1, -3 on (w, 1], 1/3 on [0, w].
    auto exponent = [&h](double x) {
        const double second = -(eval_law(h, x) + x * x * x);
        return std::log(second) / std::log(x);
    };
    CHECK(exponent(2.0) == Approx(0.0).margin(1e-12));
    CHECK(exponent(5.0) == Approx(0.0).margin(1e-12));
    CHECK(exponent(0.5) == Approx(-3.0).epsilon(1e-12));
    CHECK(exponent(0.02) == Approx(-3.0).epsilon(1e-12));
    CHECK(exponent(0.005) == Approx(1.0 / 3.0).epsilon(1e-9));
    // Boundaries: |x| = 1 belongs to the middle band, |x| = w to the lowest.
    CHECK(eval_law(h, 1.0) == Approx(-2.0));
    CHECK(eval_law(h, 0.01) == Approx(-1e-6 - std::cbrt(0.01)).epsilon(1e-12));
}

TEST_CASE("frozen-branch evaluation agrees with the law on its own branch", "[laws]") {
    auto rng = testing::make_rng(29);
    for (const auto& law : testing::example_laws()) {
        for (int i = 0; i < 2000; ++i) {
            const double x = testing::signed_log_uniform(rng, 1e-6, 1e3);
            REQUIRE(eval_law_branch(law, x, law_branch(law, x)) == Approx(eval_law(law, x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("exponential quotient underflows to exact zero", "[laws]") {
    CHECK(exp_quotient(1.0, 0.05, 3.0, 0.5, 0.0) == 0.0);
    CHECK(exp_quotient(1.0, 0.05, 3.0, 0.5, 1e-12) == 0.0);
    CHECK(exp_quotient(1.0, 0.05, 3.0, 0.5, -2.0) == Approx(-std::exp(-0.05 / std::sqrt(2.0)) / 8.0));
}

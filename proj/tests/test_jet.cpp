#include "catch_amalgamated.hpp"

#include <cmath>
#include <vector>

#include "fixtime/errors.hpp"
#include "fixtime/jet.hpp"
#include "jet_oracles.hpp"
#include "support.hpp"

using namespace fixtime;
using Catch::Approx;

namespace {

using testing::Poly;

void require_close(const Jet& got, const Poly& want, double rel) {
    REQUIRE(got.order() + 1 == want.size());
    double scale = 0.0;
    for (double v : want) scale = std::max(scale, std::fabs(v));
    for (std::size_t k = 0; k < want.size(); ++k) {
        INFO("k = " << k << " got " << got[k] << " want " << want[k]);
        REQUIRE(std::fabs(got[k] - want[k]) <= rel * std::max(std::fabs(want[k]), scale));
    }
}

Poly random_poly(std::mt19937_64& rng, std::size_t order, double c0_lo, double c0_hi) {
    Poly p(order + 1);
    p[0] = testing::uniform(rng, c0_lo, c0_hi);
    for (std::size_t k = 1; k <= order; ++k) p[k] = testing::uniform(rng, -1.0, 1.0);
    return p;
}

}  // namespace

TEST_CASE("jet arithmetic examples", "[jet]") {
    const Jet a{1.0, 1.0, 0.0};
    const Jet sq = jet_mul(a, a);
    CHECK(sq[0] == 1.0);
    CHECK(sq[1] == 2.0);
    CHECK(sq[2] == 1.0);
    const Jet s = jet_add(Jet{0.0, 1.0, 0.0}, Jet{1.0, 0.0, 0.0});
    CHECK((s[0] == 1.0 && s[1] == 1.0 && s[2] == 0.0));
    const Jet d = jet_scale(Jet{1.0, 2.0, 3.0}, 2.0);
    CHECK((d[0] == 2.0 && d[1] == 4.0 && d[2] == 6.0));
    CHECK_THROWS_AS(jet_add(Jet{1.0, 2.0}, Jet{1.0, 2.0, 3.0}), OrderMismatch);
    CHECK_THROWS_AS(jet_mul(Jet{1.0}, Jet{1.0, 2.0}), OrderMismatch);
}

TEST_CASE("jet transcendental examples", "[jet]") {
    const Jet e = jet_exp(Jet{0.0, 1.0, 0.0, 0.0});
    CHECK(e[0] == Approx(1.0));
    CHECK(e[1] == Approx(1.0));
    CHECK(e[2] == Approx(0.5));
    CHECK(e[3] == Approx(1.0 / 6.0));

    const Jet r = jet_recip(Jet{1.0, 1.0, 0.0, 0.0});
    CHECK((r[0] == 1.0 && r[1] == -1.0 && r[2] == 1.0 && r[3] == -1.0));

    const Jet p = jet_pow(Jet{2.0, 1.0, 0.0, 0.0}, 3.0);
    CHECK(p[0] == Approx(8.0));
    CHECK(p[1] == Approx(12.0));
    CHECK(p[2] == Approx(6.0));
    CHECK(p[3] == Approx(1.0));

    CHECK_THROWS_AS(jet_recip(Jet{0.0, 1.0}), ZeroConstantTerm);
    CHECK_THROWS_AS(jet_pow(Jet{0.0, 1.0}, 0.5), ZeroConstantTerm);
    CHECK_THROWS_AS(jet_pow(Jet{-1.0, 1.0}, 0.5), ZeroConstantTerm);
    CHECK_THROWS_AS(jet_log(Jet{-1.0, 1.0}), ZeroConstantTerm);
    CHECK_NOTHROW(jet_pow(Jet{0.0, 1.0}, 2.0));
}

TEST_CASE("derivatives are recoverable from coefficients", "[jet]") {
    const Jet j{1.0, 2.0, 3.0, 4.0};
    CHECK(j.derivative(0) == 1.0);
    CHECK(j.derivative(1) == 2.0);
    CHECK(j.derivative(2) == 6.0);
    CHECK(j.derivative(3) == 24.0);
    const Jet d = jet_differentiate(j);
    CHECK(d.order() == 2);
    CHECK((d[0] == 2.0 && d[1] == 6.0 && d[2] == 12.0));
}

TEST_CASE("state jets along the integrator chain", "[jet]") {
    const std::vector<double> x{1.0, 2.0, 6.0};
    const Jet a = state_jet(x, 0, 2);
    CHECK((a[0] == 1.0 && a[1] == 2.0 && a[2] == 3.0));
    const std::vector<double> one{5.0};
    const Jet b = state_jet(one, 0, 0);
    CHECK((b.order() == 0 && b[0] == 5.0));
    CHECK_THROWS_AS(state_jet(x, 1, 2), OrderTooHigh);
}

TEST_CASE("jet operations agree with symbolic series oracles", "[jet][property]") {
    auto rng = testing::make_rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t K = 1 + static_cast<std::size_t>(trial % 7);
        const Poly f = random_poly(rng, K, 0.5, 2.0);
        const Poly g = random_poly(rng, K, -2.0, 2.0);
        const Jet jf(f), jg(g);

        require_close(jet_mul(jf, jg), testing::poly_mul(f, g), 1e-12);
        require_close(jet_exp(jg), testing::oracle_exp(g), 1e-12);
        require_close(jet_log(jf), testing::oracle_log(f), 1e-12);
        require_close(jet_recip(jf), testing::oracle_pow(f, -1.0), 1e-12);
        const double alpha = testing::uniform(rng, -3.5, 3.5);
        require_close(jet_pow(jf, alpha), testing::oracle_pow(f, alpha), 1e-12);

        Poly cube = testing::poly_mul(testing::poly_mul(g, g), g);
        require_close(jet_ipow(jg, 3), cube, 1e-12);
        require_close(jet_pow(jg, 3.0), cube, 1e-12);
        Poly p7 = Poly(K + 1, 0.0);
        p7[0] = 1.0;
        for (int i = 0; i < 7; ++i) p7 = testing::poly_mul(p7, g);
        require_close(jet_ipow(jg, 7), p7, 1e-12);

        // Signed power through |a|: odd in the jet.
        Poly neg = f;
        for (double& v : neg) v = -v;
        const Jet sp = jet_spow(Jet(neg), 0.8);
        Poly want = testing::oracle_pow(f, 0.8);
        for (double& v : want) v = -v;
        require_close(sp, want, 1e-12);
    }
}

TEST_CASE("jet derivatives match finite differences along a smooth path", "[jet][property]") {
    // h(t) = exp(-0.3 x(t)) * x(t)^{-1.5} with x(t) = 2 + sin t, expanded at t0.
    auto h = [](double t) {
        const double x = 2.0 + std::sin(t);
        return std::exp(-0.3 * x) * std::pow(x, -1.5);
    };
    auto rng = testing::make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const double t0 = testing::uniform(rng, -3.0, 3.0);
        const double s = std::sin(t0), c = std::cos(t0);
        const Jet x{2.0 + s, c, -s / 2.0, -c / 6.0};
        const Jet hj = jet_mul(jet_exp(jet_scale(x, -0.3)), jet_pow(x, -1.5));

        const double step = 1e-3;
        const double d1 = (h(t0 + step) - h(t0 - step)) / (2.0 * step);
        const double d2 = (h(t0 + step) - 2.0 * h(t0) + h(t0 - step)) / (step * step);
        const double d3 =
            (h(t0 + 2 * step) - 2 * h(t0 + step) + 2 * h(t0 - step) - h(t0 - 2 * step)) / (2.0 * step * step * step);
        CHECK(hj.derivative(0) == Approx(h(t0)).epsilon(1e-14));
        CHECK(std::fabs(hj.derivative(1) - d1) <= 10.0 * step * step);
        CHECK(std::fabs(hj.derivative(2) - d2) <= 10.0 * step * step);
        CHECK(std::fabs(hj.derivative(3) - d3) <= 50.0 * step * step);
    }
}

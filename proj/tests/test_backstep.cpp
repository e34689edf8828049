#include "catch_amalgamated.hpp"

#include <cmath>
#include <vector>

#include "fixtime/analysis.hpp"
#include "fixtime/backstep.hpp"
#include "fixtime/errors.hpp"
#include "fixtime/laws.hpp"
#include "fixtime/sim.hpp"
#include "support.hpp"

using namespace fixtime;
using Catch::Approx;

namespace {

const StageParams kStage{1.0, 1.0, 1.0, 3, 3, 0.8};

// Example-2 control law written out by hand for the double integrator.
double dphi1_dt(const StageParams& s, double x1, double x2) {
    if (x1 == 0.0) return 0.0;
    const double E = std::exp(-s.gamma / std::pow(std::fabs(x1), s.r));
    const double a = std::fabs(x1);
    return -x2 * (s.alpha * s.p * std::pow(x1, s.p - 1) - s.beta * s.q / std::pow(x1, s.q + 1) * E +
                  s.beta * s.gamma * s.r / (std::pow(x1, s.q + 1) * std::pow(a, s.r)) * E);
}

double explicit_u(const BackstepParams& bp, double x1, double x2) {
    const StageParams& s1 = bp.stages[0];
    const StageParams& s2 = bp.stages[1];
    const double v1 = phi(s1, x1);
    const double e1 = x2 - v1;
    if (e1 == 0.0) return 0.0;
    const double E = std::exp(-s2.gamma / std::pow(std::fabs(e1), s2.r));
    return -s2.alpha * std::pow(e1, s2.p) - s2.beta / std::pow(e1, s2.q) * E + dphi1_dt(s1, x1, x2) -
           bp.tail.chi * spow(e1, bp.tail.l);
}

SimConfig backstep_cfg() {
    SimConfig c;
    c.t_end = 20.0;
    return c;
}

}  // namespace

TEST_CASE("phi examples", "[backstep]") {
    CHECK(phi(kStage, 1.0) == Approx(-1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(phi(kStage, 1.0) == Approx(-1.36788).epsilon(1e-5));
    CHECK(phi(kStage, -1.0) == Approx(1.36788).epsilon(1e-5));
    CHECK(phi(kStage, 0.0) == 0.0);
    CHECK(phi(kStage, 1e-6) == Approx(-1e-18).epsilon(1e-12));
}

TEST_CASE("phi is odd", "[backstep][property]") {
    auto rng = testing::make_rng(21);
    for (int i = 0; i < 10000; ++i) {
        const double e = testing::log_uniform(rng, 1e-4, 1e2);
        REQUIRE(phi(kStage, -e) == -phi(kStage, e));
    }
}

TEST_CASE("phi_jet examples", "[backstep]") {
    const Jet j0 = phi_jet(kStage, Jet{1.0});
    CHECK(j0.order() == 0);
    CHECK(j0[0] == Approx(-1.36788).epsilon(1e-5));

    const Jet j1 = phi_jet(kStage, Jet{1.0, 2.0});
    CHECK(j1[0] == Approx(phi(kStage, 1.0)).epsilon(1e-14));
    CHECK(j1[1] == Approx(dphi1_dt(kStage, 1.0, 2.0)).epsilon(1e-12));

    const Jet z = phi_jet(kStage, Jet{0.0, 5.0});
    CHECK(z.is_zero());
    CHECK(underflow_cut(kStage) == Approx(std::pow(1.0 / 700.0, 1.0 / 0.8)).epsilon(1e-12));
}

TEST_CASE("phi_jet first coefficient matches the hand-derived rate", "[backstep][property]") {
    auto rng = testing::make_rng(22);
    for (int i = 0; i < 10000; ++i) {
        const double x1 = testing::signed_log_uniform(rng, 1e-3, 1e2);
        const double x2 = testing::uniform(rng, -50.0, 50.0);
        const Jet j = phi_jet(kStage, Jet{x1, x2});
        const double want = dphi1_dt(kStage, x1, x2);
        INFO("x1=" << x1 << " x2=" << x2);
        REQUIRE(std::fabs(j[1] - want) <= std::max(1e-10, 1e-10 * std::fabs(want)));
    }
}

TEST_CASE("two-stage control examples", "[backstep]") {
    const Controller c = synthesize(presets::double_integrator(), presets::example2_params());
    const std::vector<double> x{1.0, 0.0};
    const ControlBreakdown b = c.evaluate(x);
    REQUIRE(b.virtual_controls.size() == 1);
    CHECK(b.virtual_controls[0] == Approx(-1.36788).epsilon(1e-5));
    CHECK(b.errors[1] == Approx(1.36788).epsilon(1e-5));
    CHECK(b.vdot_last == 0.0);
    const double e1 = b.errors[1];
    const double want = -std::pow(e1, 3) - std::exp(-1.0 / std::pow(e1, 0.8)) / std::pow(e1, 3) - std::cbrt(e1);
    CHECK(b.u == Approx(want).epsilon(1e-13));
    CHECK(b.u == Approx(-3.849).margin(5e-4));

    CHECK(c(std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(c.last_virtual_control(x) == b.virtual_controls[0]);
}

TEST_CASE("single-stage design reduces to the exponential-term law", "[backstep]") {
    PlantSpec plant;
    plant.a = {0.7};
    BackstepParams bp;
    bp.stages = {kStage};
    bp.tail = FinalTail{2.0, 0.4};
    const Controller c = synthesize(plant, bp);
    auto rng = testing::make_rng(23);
    for (int i = 0; i < 1000; ++i) {
        const double x = testing::signed_log_uniform(rng, 1e-3, 1e2);
        const double want = phi(kStage, x) - 2.0 * spow(x, 0.4) - 0.7 * x;
        REQUIRE(c(std::vector<double>{x}) == Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("synthesized control matches the explicit two-stage formula", "[backstep][property]") {
    const BackstepParams bp = presets::example2_params();
    const Controller c = synthesize(presets::double_integrator(), bp);
    auto rng = testing::make_rng(24);
    int checked = 0;
    while (checked < 10000) {
        const double x1 = testing::signed_log_uniform(rng, 1e-3, 30.0);
        const double x2 = testing::uniform(rng, -60.0, 60.0);
        if (std::fabs(x2 - phi(bp.stages[0], x1)) <= 1e-3) continue;
        const double got = c(std::vector<double>{x1, x2});
        const double want = explicit_u(bp, x1, x2);
        INFO("x1=" << x1 << " x2=" << x2);
        REQUIRE(std::fabs(got - want) <= std::max(1e-8, 1e-6 * std::fabs(want)));
        ++checked;
    }
}

TEST_CASE("origin is a fixed point of every preset", "[backstep]") {
    const Controller c2 = synthesize(presets::double_integrator(), presets::example2_params());
    CHECK(c2(std::vector<double>{0.0, 0.0}) == 0.0);
    PlantSpec p3;
    p3.a = {0.5, -1.0, 0.25};
    BackstepParams b3;
    b3.stages = {kStage, kStage, kStage};
    const Controller c3 = synthesize(p3, b3);
    CHECK(c3(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("closed-loop right-hand side examples", "[backstep]") {
    std::vector<double> dx(2);
    const auto zero = closed_loop_rhs(presets::double_integrator(), [](StateView) { return 0.0; });
    zero.rhs(0.0, std::vector<double>{1.0, 2.0}, 0, dx);
    CHECK((dx[0] == 2.0 && dx[1] == 0.0));

    const auto lin = closed_loop_rhs(presets::double_integrator(), linear_feedback(presets::example2_linear_gain()));
    lin.rhs(0.0, std::vector<double>{1.0, 0.0}, 0, dx);
    CHECK((dx[0] == 0.0 && dx[1] == -4.0));

    const auto dist = closed_loop_rhs(presets::double_integrator(DisturbanceSpec{}), [](StateView) { return 0.0; });
    dist.rhs(M_PI / 2.0, std::vector<double>{0.0, 0.0}, 0, dx);
    CHECK(dx[0] == 0.0);
    CHECK(dx[1] == Approx(20.0).epsilon(1e-15));
}

TEST_CASE("stage-one subsystem decreases V0", "[backstep]") {
    // x1' = v1(x1): the first error dynamics with x2 replaced by the virtual control.
    const auto sys = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = phi(kStage, x[0]); });
    for (double x0 : {-20.0, -2.0, 0.5, 2.0, 20.0}) {
        SimConfig cfg;
        cfg.t_end = 5.0;
        const auto tr = integrate(sys, std::vector<double>{x0}, cfg);
        for (std::size_t i = 1; i < tr.size() && tr.norm(i) > 1e-10; ++i) REQUIRE(tr.V[i] <= tr.V[i - 1]);
    }
}

TEST_CASE("presets simulate without singular-region errors", "[backstep]") {
    for (const char* label : {"none", "sin_t", "sin_2t"}) {
        std::optional<DisturbanceSpec> d;
        if (std::string(label) == "sin_t") d = DisturbanceSpec{20.0, 1.0, 1};
        if (std::string(label) == "sin_2t") d = DisturbanceSpec{20.0, 2.0, 1};
        const Controller c = synthesize(presets::double_integrator(d), presets::example2_params());
        for (const auto& x0 : {std::vector<double>{2.0, 2.0}, std::vector<double>{20.0, 20.0}}) {
            INFO(label << " x0=" << x0[0]);
            CHECK_NOTHROW(integrate(backstep_system(c), x0, backstep_cfg()));
        }
    }
}

TEST_CASE("stage errors enter their sets before the derived bounds", "[backstep][theorem]") {
    const Controller c = synthesize(presets::double_integrator(), presets::example2_params());
    const std::vector<double> w{0.1, 0.1};
    for (const auto& x0 : {std::vector<double>{2.0, 2.0}, std::vector<double>{20.0, 20.0}}) {
        const auto rows = theorem1_entry_check(c, x0, w, backstep_cfg(), 1e-6);
        REQUIRE(rows.size() == 2);
        for (const auto& r : rows) {
            INFO("x0=" << x0[0] << " stage " << r.stage);
            REQUIRE(r.entry);
            CHECK(r.before_derived);
        }
    }
}

TEST_CASE("state converges to the origin by t = 20", "[backstep][theorem][convergence]") {
    const Controller c = synthesize(presets::double_integrator(), presets::example2_params());
    for (const auto& x0 : {std::vector<double>{2.0, 2.0}, std::vector<double>{20.0, 20.0}}) {
        const auto tr = integrate(backstep_system(c), x0, backstep_cfg());
        INFO("x0=" << x0[0] << " |x(20)|=" << tr.norm(tr.size() - 1));
        CHECK(tr.norm(tr.size() - 1) < 1e-4);
    }
}

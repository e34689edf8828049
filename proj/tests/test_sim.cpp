#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fixtime/errors.hpp"
#include "fixtime/laws.hpp"
#include "fixtime/sim.hpp"
#include "support.hpp"

using namespace fixtime;
using Catch::Approx;

namespace {

SimConfig config(double t_end) {
    SimConfig c;
    c.t_end = t_end;
    return c;
}

double final_state(const Trajectory& tr, std::size_t j = 0) { return tr.state(tr.size() - 1)[j]; }

}  // namespace

TEST_CASE("linear decay matches the exponential", "[sim]") {
    const auto sys = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = -x[0]; });
    const std::vector<double> x0{1.0};
    const auto tr = integrate(sys, x0, config(1.0));
    CHECK(tr.times.back() == 1.0);
    CHECK(final_state(tr) == Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(tr.size() == 1001);
}

TEST_CASE("relay law settles at V0", "[sim]") {
    const ScalarLaw relay(Relay{});
    const std::vector<double> x0{3.0};
    const auto tr = integrate(scalar_law_system(relay), x0, config(5.0));
    REQUIRE(tr.clamped_at);
    CHECK(std::fabs(*tr.clamped_at - 3.0) <= 1e-3);
    CHECK(final_state(tr) == 0.0);
    CHECK(std::any_of(tr.events.begin(), tr.events.end(), [](const Event& e) { return e.kind == EventKind::Clamp; }));
}

TEST_CASE("time-varying right-hand side", "[sim]") {
    // x' = 20 sin t from 0: x(pi) = 40.
    const auto sys = plain_system(1, [](double t, StateView, DerivView dx) { dx[0] = 20.0 * std::sin(t); });
    const std::vector<double> x0{0.0};
    const auto tr = integrate(sys, x0, config(M_PI));
    CHECK(final_state(tr) == Approx(40.0).epsilon(1e-9));
}

TEST_CASE("fractional power settles in 1.5 from 1", "[sim]") {
    const ScalarLaw frac(FracPower{1.0 / 3.0});
    const std::vector<double> x0{1.0};
    const auto tr = integrate(scalar_law_system(frac), x0, config(3.0));
    const auto ts = settling_time(tr, 1e-6);
    REQUIRE(ts);
    CHECK(*ts == Approx(1.5).margin(2e-3));
}

TEST_CASE("settling and reach-and-stay on the linear law", "[sim]") {
    const ScalarLaw lin(Linear{1.0});
    const std::vector<double> x0{3.0};
    const auto tr = integrate(scalar_law_system(lin), x0, config(10.0));
    const auto ts = settling_time(tr, 1e-3);
    REQUIRE(ts);
    CHECK(*ts == Approx(std::log(3000.0)).margin(2e-3));
    const auto rs = reach_and_stay(tr, 1e-3);
    REQUIRE(rs);
    CHECK(*rs == Approx(std::log(3000.0)).margin(2e-3));
    CHECK_FALSE(settling_time(tr, 1e-6));

    const auto grow = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = x[0]; });
    const auto up = integrate(grow, std::vector<double>{1.0}, config(2.0));
    CHECK_FALSE(reach_and_stay(up, 0.5));
    CHECK(final_state(up) == Approx(std::exp(2.0)).epsilon(1e-8));
}

TEST_CASE("oscillating trajectories do not count as settled", "[sim]") {
    const auto osc = plain_system(1, [](double t, StateView, DerivView dx) { dx[0] = std::cos(t); });
    const auto tr = integrate(osc, std::vector<double>{0.0}, config(10.0));
    CHECK_FALSE(reach_and_stay(tr, 0.5));
}

TEST_CASE("Lyapunov trace is monotone for every example law", "[sim][property]") {
    for (const auto& law : testing::example_laws()) {
        for (double x0 : {-50.0, -1.0, 0.3, 7.0}) {
            INFO(law.name() << " x0=" << x0);
            const std::vector<double> init{x0};
            const auto tr = integrate(scalar_law_system(law), init, config(60.0));
            // Below the absolute tolerance the state is solver noise.
            for (std::size_t i = 1; i < tr.size() && tr.norm(i) > 1e-10; ++i) {
                INFO("t=" << tr.times[i] << " V=" << tr.V[i] << " prev=" << tr.V[i - 1]);
                REQUIRE(tr.V[i] <= tr.V[i - 1] * (1.0 + 1e-9) + 1e-300);
                REQUIRE(tr.Vdot[i] <= 0.0);
            }
            if (law.finite_time()) {
                REQUIRE(tr.clamped_at);
                for (std::size_t i = 0; i < tr.size(); ++i) {
                    if (tr.times[i] >= *tr.clamped_at) REQUIRE(tr.state(i)[0] == 0.0);
                }
            }
        }
    }
}

TEST_CASE("recorded Vdot matches the derivative of V", "[sim][property]") {
    const ScalarLaw law = presets::law29_polyakov();
    const auto tr = integrate(scalar_law_system(law), std::vector<double>{2.0}, config(0.5));
    for (std::size_t i = 1; i + 1 < tr.size(); i += 37) {
        if (tr.V[i + 1] == 0.0) break;
        const double fd = (tr.V[i + 1] - tr.V[i - 1]) / (tr.times[i + 1] - tr.times[i - 1]);
        CHECK(tr.Vdot[i] == Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("tightening tolerance converges on the reference", "[sim][property]") {
    // Van der Pol-like smooth system compared against a much tighter solve.
    const auto sys = plain_system(2, [](double, StateView x, DerivView dx) {
        dx[0] = x[1];
        dx[1] = (1.0 - x[0] * x[0]) * x[1] - x[0];
    });
    const std::vector<double> x0{2.0, 0.0};
    SimConfig tight = config(5.0);
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const auto ref = integrate(sys, x0, tight);
    double prev = 1.0;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
        SimConfig c = config(5.0);
        c.rel_tol = tol;
        c.abs_tol = tol * 1e-3;
        const auto tr = integrate(sys, x0, c);
        const double err = std::fabs(final_state(tr) - final_state(ref));
        CHECK(err < prev);
        CHECK(err <= 100.0 * tol);
        prev = err;
    }
}

TEST_CASE("csv output has the documented columns and round-trips", "[sim]") {
    const ScalarLaw law = presets::law31_heaviside_exp();
    const auto tr = integrate(scalar_law_system(law), std::vector<double>{3.0}, config(0.2));
    std::ostringstream os;
    write_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,x1,u,V,Vdot");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        REQUIRE(vals.size() == 5);
        REQUIRE(vals[0] == tr.times[rows]);
        REQUIRE(vals[1] == tr.state(rows)[0]);
        REQUIRE(vals[2] == tr.controls[rows]);
        REQUIRE(vals[3] == tr.V[rows]);
        ++rows;
    }
    CHECK(rows == tr.size());
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("invalid configurations are rejected", "[sim]") {
    const auto sys = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = -x[0]; });
    SimConfig c;
    c.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate(sys, std::vector<double>{1.0}, c), InvalidParams);
    c = SimConfig{};
    c.t_end = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
    c = SimConfig{};
    c.h_min = 1.0;
    c.h_max = 0.1;
    CHECK_THROWS_AS(c.validate(), InvalidParams);
    CHECK_THROWS_AS(integrate(sys, std::vector<double>{1.0, 2.0}, SimConfig{}), InvalidParams);
}

TEST_CASE("solver failures carry time and state", "[sim]") {
    const auto stiff = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = -1e9 * (x[0] - 1.0); });
    SimConfig c = config(1.0);
    c.h_min = 1e-3;
    c.h_init = 1e-2;
    try {
        integrate(stiff, std::vector<double>{0.0}, c);
        FAIL("expected StepUnderflow");
    } catch (const StepUnderflow& e) {
        CHECK(e.time() >= 0.0);
        CHECK(e.last_state().size() == 1);
    }

    const auto blow = plain_system(1, [](double, StateView x, DerivView dx) { dx[0] = x[0] * x[0]; });
    CHECK_THROWS_AS(integrate(blow, std::vector<double>{1.0}, config(2.0)), SolverError);

    const auto nan = plain_system(1, [](double t, StateView, DerivView dx) { dx[0] = t > 0.5 ? std::nan("") : 1.0; });
    CHECK_THROWS_AS(integrate(nan, std::vector<double>{0.0}, config(1.0)), NonFiniteValue);
}

#include "fixtime/backstep.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "fixtime/errors.hpp"
#include "fixtime/laws.hpp"

namespace fixtime {

namespace {

// exp() of anything below this is treated as an exact zero jet.
constexpr double kNegligibleLog = -700.0;
constexpr double kCutExponent = 700.0;

bool odd_positive(int v) { return v >= 1 && v % 2 == 1; }

double signed_ipow(double e, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= e;
    return r;
}

}  // namespace

void PlantSpec::validate() const {
    if (a.empty()) throw InvalidParams("plant: order must be >= 1");
    for (double v : a) {
        if (!std::isfinite(v)) throw InvalidParams("plant: coefficients must be finite");
    }
    if (disturbance) {
        if (disturbance->target >= a.size()) throw InvalidParams("plant: disturbance target out of range");
        if (!(disturbance->frequency > 0.0) || !std::isfinite(disturbance->amplitude)) {
            throw InvalidParams("plant: disturbance needs a finite amplitude and frequency > 0");
        }
    }
}

void StageParams::validate() const {
    if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) throw InvalidParams("stage: alpha, beta, gamma must be > 0");
    if (!odd_positive(p) || !odd_positive(q)) throw InvalidParams("stage: p and q must be odd integers >= 1");
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidParams("stage: r must be > 0");
}

double underflow_cut(const StageParams& s) { return std::pow(s.gamma / kCutExponent, 1.0 / s.r); }

double phi(const StageParams& s, double e) {
    if (e == 0.0) return 0.0;
    return -s.alpha * signed_ipow(e, s.p) - exp_quotient(s.beta, s.gamma, s.q, s.r, e);
}

Jet phi_jet(const StageParams& s, const Jet& e, double cut) {
    Jet out = jet_scale(jet_ipow(e, static_cast<unsigned>(s.p)), -s.alpha);
    const double e0 = e[0];
    if (e0 == 0.0) return out;

    // Inside the cut the term is dropped once its value underflows; above
    // that it is still representable and is evaluated like everywhere else.
    const double a = std::fabs(e0);
    if (a < cut) {
        const double lead = std::log(s.beta) - s.q * std::log(a) - s.gamma * std::pow(a, -s.r);
        if (lead < kNegligibleLog) return out;
    }

    // sign(e0) * exp(ln beta - q ln|e| - gamma |e|^{-r})
    const double sgn = e0 > 0.0 ? 1.0 : -1.0;
    const Jet ea = jet_scale(e, sgn);
    const Jet expo = jet_sub(jet_add_scalar(jet_scale(jet_log(ea), -static_cast<double>(s.q)), std::log(s.beta)),
                             jet_scale(jet_pow(ea, -s.r), s.gamma));
    Jet result = jet_sub(out, jet_scale(jet_exp(expo), sgn));
    for (std::size_t k = 0; k <= result.order(); ++k) {
        if (!std::isfinite(result[k])) {
            throw SingularRegion("phi_jet: derivative of order " + std::to_string(k) + " is not finite at |e| = " +
                                 std::to_string(a));
        }
    }
    return result;
}

Controller::Controller(PlantSpec plant, BackstepParams params) : plant_(std::move(plant)), params_(std::move(params)) {
    plant_.validate();
    if (params_.stages.size() != plant_.order()) {
        throw InvalidParams("backstep: expected " + std::to_string(plant_.order()) + " stages, got " +
                            std::to_string(params_.stages.size()));
    }
    for (const auto& s : params_.stages) s.validate();
    if (!(params_.tail.chi > 0.0)) throw InvalidParams("backstep: chi must be > 0");
    if (!(params_.tail.l > 0.0 && params_.tail.l < 1.0)) throw InvalidParams("backstep: 0 < l < 1 violated");
    if (params_.underflow_cut.empty()) {
        for (const auto& s : params_.stages) params_.underflow_cut.push_back(underflow_cut(s));
    } else if (params_.underflow_cut.size() != params_.stages.size()) {
        throw InvalidParams("backstep: one underflow cut per stage required");
    }
}

ControlBreakdown Controller::evaluate(StateView x) const {
    const std::size_t n = plant_.order();
    if (x.size() != n) throw InvalidParams("backstep: state has the wrong dimension");

    auto stage_jet = [this](std::size_t i, const Jet& e) {
        try {
            return phi_jet(params_.stages[i], e, params_.underflow_cut[i]);
        } catch (const SingularRegion& err) {
            throw SingularRegion(std::string(err.what()) + " (stage " + std::to_string(i + 1) + ")",
                                 static_cast<int>(i + 1));
        }
    };

    ControlBreakdown b;
    for (std::size_t j = 0; j < n; ++j) b.drift += plant_.a[j] * x[j];
    b.errors.push_back(x[0]);

    if (n >= 2) {
        Jet v = stage_jet(0, state_jet(x, 0, n - 1));
        b.virtual_controls.push_back(v[0]);
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t order = n - 1 - i;
            const Jet e = jet_sub(state_jet(x, i, order), jet_truncate(v, order));
            b.errors.push_back(e[0]);
            if (i + 1 == n) break;
            v = jet_add(stage_jet(i, e), jet_differentiate(v));
            b.virtual_controls.push_back(v[0]);
        }
        b.vdot_last = v[1];
    }

    const double e = b.errors.back();
    const StageParams& last = params_.stages.back();
    const double tail = e == 0.0 ? 0.0 : params_.tail.chi * spow(e, params_.tail.l);
    b.u = phi(last, e) - tail + b.vdot_last - b.drift;
    return b;
}

double Controller::last_virtual_control(StateView x) const {
    if (plant_.order() == 1) return 0.0;
    return evaluate(x).virtual_controls.back();
}

Controller synthesize(const PlantSpec& plant, const BackstepParams& params) { return Controller(plant, params); }

Feedback linear_feedback(std::vector<double> K) {
    return [K = std::move(K)](StateView x) {
        double u = 0.0;
        for (std::size_t i = 0; i < K.size() && i < x.size(); ++i) u += K[i] * x[i];
        return u;
    };
}

System closed_loop_rhs(const PlantSpec& plant, Feedback u) {
    plant.validate();
    const std::size_t n = plant.order();
    auto shared_u = std::make_shared<const Feedback>(std::move(u));
    System sys;
    sys.dim = n;
    sys.rhs = [plant, shared_u, n](double t, StateView x, int, DerivView dx) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 < n) dx[i] = x[i + 1];
            acc += plant.a[i] * x[i];
        }
        dx[n - 1] = acc + (*shared_u)(x);
        if (plant.disturbance) dx[plant.disturbance->target] += (*plant.disturbance)(t);
    };
    sys.control = [shared_u](double, StateView x, int) { return (*shared_u)(x); };
    return sys;
}

System backstep_system(const Controller& controller) {
    auto ctl = std::make_shared<const Controller>(controller);
    System sys = closed_loop_rhs(ctl->plant(), [ctl](StateView x) { return (*ctl)(x); });
    const auto& d = ctl->plant().disturbance;
    if (d && d->amplitude != 0.0) return sys;

    const std::size_t n = ctl->plant().order();
    SlidingSurface s;
    s.value = [ctl](StateView x) { return ctl->last_error(x); };
    s.project = [ctl, n](std::span<double> x) { x[n - 1] = ctl->last_virtual_control(x); };
    s.reduced_rhs = [ctl, n](double, StateView x, DerivView dx) {
        for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
        dx[n - 1] = ctl->evaluate(x).vdot_last;
    };
    s.reduced_control = [ctl](double, StateView x) {
        const ControlBreakdown b = ctl->evaluate(x);
        return b.vdot_last - b.drift;
    };
    sys.sliding = std::move(s);
    return sys;
}

namespace presets {

PlantSpec double_integrator(std::optional<DisturbanceSpec> d) {
    PlantSpec p;
    p.a = {0.0, 0.0};
    p.disturbance = d;
    return p;
}

BackstepParams example2_params() {
    BackstepParams bp;
    bp.stages = {StageParams{1.0, 1.0, 1.0, 3, 3, 0.8}, StageParams{1.0, 1.0, 1.0, 3, 3, 0.8}};
    bp.tail = FinalTail{1.0, 1.0 / 3.0};
    return bp;
}

std::vector<double> example2_linear_gain() { return {-4.0, -4.0}; }

}  // namespace presets

}  // namespace fixtime

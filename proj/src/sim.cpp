#include "fixtime/sim.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "fixtime/errors.hpp"

namespace fixtime {

namespace {

// Dormand-Prince 5(4) tableau, error weights and dense-output weights.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr int kBisections = 60;

using Eval = std::function<void(double, StateView, DerivView)>;

double euclid(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

bool all_finite(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

class DormandPrince {
public:
    explicit DormandPrince(std::size_t n)
        : n_(n), k1_(n), k2_(n), k3_(n), k4_(n), k5_(n), k6_(n), k7_(n), tmp_(n), y1_(n) {
        for (auto& r : rcont_) r.resize(n);
    }

    // Evaluates k1 = f(t, y).
    void start(const Eval& f, double t, StateView y, SolverStats& stats) {
        f(t, y, k1_);
        ++stats.rhs_evals;
    }

    std::span<const double> k1() const { return k1_; }

    // One trial step; returns the scaled error norm, or NaN on a non-finite stage.
    double attempt(const Eval& f, double t, StateView y, double h, double rtol, double atol,
                   SolverStats& stats) {
        auto stage = [&](std::span<double> out, double ct, auto&& combine) {
            for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * combine(i);
            f(t + ct * h, tmp_, out);
            ++stats.rhs_evals;
            return all_finite(tmp_) && all_finite(out);
        };
        if (!stage(k2_, c2, [&](std::size_t i) { return a21 * k1_[i]; })) return NAN;
        if (!stage(k3_, c3, [&](std::size_t i) { return a31 * k1_[i] + a32 * k2_[i]; })) return NAN;
        if (!stage(k4_, c4, [&](std::size_t i) { return a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]; }))
            return NAN;
        if (!stage(k5_, c5, [&](std::size_t i) {
                return a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i];
            }))
            return NAN;
        if (!stage(k6_, 1.0, [&](std::size_t i) {
                return a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i];
            }))
            return NAN;
        for (std::size_t i = 0; i < n_; ++i) {
            y1_[i] = y[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
        }
        if (!all_finite(y1_)) return NAN;
        f(t + h, y1_, k7_);
        ++stats.rhs_evals;
        if (!all_finite(k7_)) return NAN;

        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double err =
                h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
            const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y1_[i]));
            acc += (err / sc) * (err / sc);
        }
        return std::sqrt(acc / static_cast<double>(n_));
    }

    // Prepares the continuous extension of an accepted step from y to y1.
    void prepare_dense(StateView y, double h) {
        for (std::size_t i = 0; i < n_; ++i) {
            const double dy = y1_[i] - y[i];
            const double bspl = h * k1_[i] - dy;
            rcont_[0][i] = y[i];
            rcont_[1][i] = dy;
            rcont_[2][i] = bspl;
            rcont_[3][i] = dy - h * k7_[i] - bspl;
            rcont_[4][i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                                d7 * k7_[i]);
        }
    }

    void dense(double theta, std::span<double> out) const {
        const double t1 = 1.0 - theta;
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = rcont_[0][i] +
                     theta * (rcont_[1][i] +
                              t1 * (rcont_[2][i] + theta * (rcont_[3][i] + t1 * rcont_[4][i])));
        }
    }

    std::span<const double> y1() const { return y1_; }

    // First same-as-last: the accepted step's k7 becomes the next k1.
    void reuse_last() { std::swap(k1_, k7_); }

private:
    std::size_t n_;
    std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y1_;
    std::array<std::vector<double>, 5> rcont_;
};

void append_number(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

std::string format_double(double v) {
    std::string s;
    append_number(s, v);
    return s;
}

void SimConfig::validate() const {
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!pos(rel_tol) || !pos(abs_tol)) throw InvalidParams("sim: rel_tol and abs_tol must be > 0");
    if (!pos(h_init) || !pos(h_min) || !pos(h_max)) throw InvalidParams("sim: step sizes must be > 0");
    if (!(h_min <= h_init && h_init <= h_max)) throw InvalidParams("sim: h_min <= h_init <= h_max violated");
    if (!pos(t_end)) throw InvalidParams("sim: t_end must be > 0");
    if (!pos(eps_stop)) throw InvalidParams("sim: eps_stop must be > 0");
    if (!pos(record_dt)) throw InvalidParams("sim: record_dt must be > 0");
}

double DisturbanceSpec::operator()(double t) const { return amplitude * std::sin(frequency * t); }

double Trajectory::norm(std::size_t i) const { return euclid(state(i)); }

System scalar_law_system(const ScalarLaw& law) {
    System sys;
    sys.dim = 1;
    sys.rhs = [law](double, StateView x, int branch, DerivView dx) {
        dx[0] = eval_law_branch(law, x[0], branch);
    };
    sys.branch_of = [law](StateView x) { return law_branch(law, x[0]); };
    sys.control = [law](double, StateView x, int branch) { return eval_law_branch(law, x[0], branch); };
    sys.finite_time = law.finite_time();
    return sys;
}

System plain_system(std::size_t dim, std::function<void(double, StateView, DerivView)> rhs) {
    System sys;
    sys.dim = dim;
    sys.rhs = [f = std::move(rhs)](double t, StateView x, int, DerivView dx) { f(t, x, dx); };
    return sys;
}

Trajectory integrate(const System& sys, std::span<const double> x0, const SimConfig& cfg) {
    cfg.validate();
    if (x0.size() != sys.dim) throw InvalidParams("integrate: initial state has the wrong dimension");
    const std::size_t n = sys.dim;
    if (!all_finite(x0)) throw NonFiniteValue("integrate: non-finite initial state", 0.0, {x0.begin(), x0.end()});

    Trajectory tr;
    tr.dim = n;
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> scratch(n), xe(n), fx(n);
    double t = 0.0;
    int branch = sys.branch_of ? sys.branch_of(x) : 0;
    bool sliding_on = false;

    const Eval full = [&](double tt, StateView y, DerivView dy) { sys.rhs(tt, y, branch, dy); };
    const Eval reduced = [&](double tt, StateView y, DerivView dy) { sys.sliding->reduced_rhs(tt, y, dy); };
    auto active = [&]() -> const Eval& { return sliding_on ? reduced : full; };

    auto record = [&](double tt, StateView y) {
        tr.times.push_back(tt);
        tr.states.insert(tr.states.end(), y.begin(), y.end());
        double u = 0.0;
        if (sliding_on && sys.sliding->reduced_control) {
            u = sys.sliding->reduced_control(tt, y);
        } else if (sys.control) {
            u = sys.control(tt, y, branch);
        }
        tr.controls.push_back(u);
        double v = 0.0, vd = 0.0;
        if (euclid(y) > 0.0) {
            active()(tt, y, fx);
            ++tr.stats.rhs_evals;
            for (std::size_t i = 0; i < n; ++i) {
                v += 0.5 * y[i] * y[i];
                vd += y[i] * fx[i];
            }
        }
        tr.V.push_back(v);
        tr.Vdot.push_back(vd);
    };

    std::optional<double> t_clamp;
    auto try_clamp = [&](double tt, StateView y) {
        if (sys.finite_time && euclid(y) <= cfg.eps_stop) t_clamp = tt;
    };

    record(0.0, x);
    try_clamp(0.0, x);
    if (!t_clamp && sys.sliding && std::fabs(sys.sliding->value(x)) <= cfg.eps_stop) {
        sys.sliding->project(x);
        sliding_on = true;
        tr.events.push_back({0.0, EventKind::Slide});
    }

    DormandPrince dp(n);
    std::size_t next_sample = 1;
    double h = cfg.h_init;
    bool need_k1 = true;
    bool last_rejected = false;
    bool last_nonfinite = false;

    while (!t_clamp && t < cfg.t_end) {
        if (need_k1) {
            dp.start(active(), t, x, tr.stats);
            if (!all_finite(dp.k1())) throw NonFiniteValue("integrate: right-hand side is not finite", t, x);
            need_k1 = false;
        }
        h = std::min({h, cfg.h_max, cfg.t_end - t});
        if (t + h == t) {
            if (last_nonfinite) throw NonFiniteValue("integrate: right-hand side is not finite", t, x);
            throw StepUnderflow("integrate: step size below time resolution", t, x);
        }

        const double err = dp.attempt(active(), t, x, h, cfg.rel_tol, cfg.abs_tol, tr.stats);
        if (!std::isfinite(err)) {
            ++tr.stats.rejected;
            if (h <= cfg.h_min) throw NonFiniteValue("integrate: right-hand side is not finite", t, x);
            h = std::max(h * 0.25, cfg.h_min);
            last_rejected = true;
            last_nonfinite = true;
            continue;
        }
        last_nonfinite = false;
        if (err > 1.0) {
            ++tr.stats.rejected;
            if (h <= cfg.h_min) throw StepUnderflow("integrate: error test fails at h_min", t, x);
            h = std::max(h * std::max(kMinFactor, kSafety * std::pow(err, -0.2)), cfg.h_min);
            last_rejected = true;
            continue;
        }
        ++tr.stats.accepted;
        dp.prepare_dense(x, h);

        double theta_end = 1.0;
        std::copy(dp.y1().begin(), dp.y1().end(), xe.begin());
        bool restart = false;

        if (sys.branch_of && !sliding_on && sys.branch_of(xe) != branch) {
            // First sub-interval containing the switch, then bisection.
            double lo = 0.0, hi = 1.0;
            constexpr int kProbe = 8;
            for (int j = 1; j <= kProbe; ++j) {
                const double th = static_cast<double>(j) / kProbe;
                dp.dense(th, scratch);
                if (sys.branch_of(scratch) != branch) {
                    hi = th;
                    break;
                }
                lo = th;
            }
            for (int it = 0; it < kBisections && (hi - lo) * h > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                dp.dense(mid, scratch);
                (sys.branch_of(scratch) != branch ? hi : lo) = mid;
            }
            theta_end = hi;
            dp.dense(theta_end, xe);
            tr.events.push_back({t + theta_end * h, EventKind::Switch});
            restart = true;
        }

        if (sys.sliding && !sliding_on) {
            const double s0 = sys.sliding->value(x);
            const double s1 = sys.sliding->value(xe);
            if (std::fabs(s1) <= cfg.eps_stop || s0 * s1 < 0.0) {
                if (s0 * s1 < 0.0) {
                    double lo = 0.0, hi = theta_end;
                    for (int it = 0; it < kBisections; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (mid <= lo || mid >= hi) break;
                        dp.dense(mid, scratch);
                        (sys.sliding->value(scratch) * s0 <= 0.0 ? hi : lo) = mid;
                    }
                    theta_end = hi;
                    dp.dense(theta_end, xe);
                }
                sys.sliding->project(xe);
                sliding_on = true;
                tr.events.push_back({t + theta_end * h, EventKind::Slide});
                restart = true;
            }
        } else if (sliding_on) {
            sys.sliding->project(xe);
            restart = true;
        }

        const double t_new = theta_end == 1.0 ? t + h : t + theta_end * h;
        while (true) {
            const double ts = static_cast<double>(next_sample) * cfg.record_dt;
            if (ts > t_new || ts >= cfg.t_end) break;
            if (ts == t_new) {
                record(ts, xe);
            } else {
                dp.dense((ts - t) / h, scratch);
                record(ts, scratch);
            }
            ++next_sample;
        }

        try_clamp(t_new, xe);
        t = t_new;
        x = xe;
        if (restart) {
            if (sys.branch_of) branch = sys.branch_of(x);
            need_k1 = true;
        } else {
            dp.reuse_last();
        }

        double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
        factor = std::clamp(factor, kMinFactor, last_rejected ? 1.0 : kMaxFactor);
        h *= factor;
        last_rejected = false;
    }

    if (t_clamp) {
        tr.clamped_at = *t_clamp;
        tr.events.push_back({*t_clamp, EventKind::Clamp});
        std::fill(x.begin(), x.end(), 0.0);
        if (!tr.times.empty() && tr.times.back() == *t_clamp) {
            tr.times.pop_back();
            tr.states.resize(tr.states.size() - n);
            tr.controls.pop_back();
            tr.V.pop_back();
            tr.Vdot.pop_back();
        }
        record(*t_clamp, x);
        while (true) {
            const double ts = static_cast<double>(next_sample) * cfg.record_dt;
            if (ts >= cfg.t_end) break;
            if (ts > *t_clamp) record(ts, x);
            ++next_sample;
        }
        t = std::max(t, *t_clamp);
    }
    if (tr.times.back() < cfg.t_end) record(cfg.t_end, x);
    return tr;
}

std::optional<double> settling_time(const Trajectory& traj, double eps) {
    const std::size_t N = traj.size();
    if (N == 0) return std::nullopt;
    std::size_t i = N;
    while (i > 0 && traj.norm(i - 1) <= eps) --i;
    if (i == N) return std::nullopt;
    return traj.times[i];
}

std::optional<double> reach_and_stay(const Trajectory& traj, double radius) {
    const std::size_t N = traj.size();
    std::size_t first = N;
    for (std::size_t i = 0; i < N; ++i) {
        if (traj.norm(i) <= radius) {
            first = i;
            break;
        }
    }
    if (first == N) return std::nullopt;
    for (std::size_t i = first + 1; i < N; ++i) {
        if (traj.norm(i) > radius) return std::nullopt;
    }
    return traj.times[first];
}

void write_csv(std::ostream& os, const Trajectory& traj) {
    std::string line = "t";
    for (std::size_t j = 0; j < traj.dim; ++j) line += ",x" + std::to_string(j + 1);
    line += ",u,V,Vdot\n";
    os << line;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        line.clear();
        append_number(line, traj.times[i]);
        for (double v : traj.state(i)) {
            line += ',';
            append_number(line, v);
        }
        for (double v : {traj.controls[i], traj.V[i], traj.Vdot[i]}) {
            line += ',';
            append_number(line, v);
        }
        line += '\n';
        os << line;
    }
}

}  // namespace fixtime

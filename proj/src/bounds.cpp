#include "fixtime/bounds.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fixtime/errors.hpp"

namespace fixtime {

namespace {

// Largest argument for which std::exp stays finite.
constexpr double kExpOverflow = 709.0;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParams(what);
}

void require_positive(std::initializer_list<std::pair<const char*, double>> fields, const char* who) {
    for (const auto& [name, value] : fields) {
        require(positive(value), std::string(who) + ": " + name + " must be > 0");
    }
}

double checked_exp(double arg, const char* who) {
    if (!(arg <= kExpOverflow)) {
        std::ostringstream os;
        os << who << ": exponent " << arg << " exceeds the double range";
        throw BoundOverflow(os.str());
    }
    return std::exp(arg);
}

BoundReport make_report(BoundFormula f, std::vector<double> terms) {
    BoundReport r;
    r.total = std::accumulate(terms.begin(), terms.end(), 0.0);
    r.terms = std::move(terms);
    r.formula = f;
    return r;
}

// 1 / (alpha^k (p k - 1)): time to bring V from +inf down to 1.
double decay_phase(double alpha, double p, double k) {
    return 1.0 / (std::pow(alpha, k) * (p * k - 1.0));
}

// e^{k gamma / w^r} (1 - w^{1+qk}) / (beta^k (1 + qk)): time from V = 1 to V = w.
double exp_quotient_phase(double beta, double gamma, double q, double r, double k, double w,
                          const char* who) {
    const double shrink = 1.0 - std::pow(w, 1.0 + q * k);
    if (shrink == 0.0) return 0.0;
    return checked_exp(k * gamma / std::pow(w, r), who) * shrink / (std::pow(beta, k) * (1.0 + q * k));
}

// w^{1 - lk} / (chi^k (1 - lk)): time from V = w to V = 0.
double terminal_phase(double chi, double l, double k, double w) {
    return std::pow(w, 1.0 - l * k) / (std::pow(chi, k) * (1.0 - l * k));
}

}  // namespace

std::string formula_id(BoundFormula f) {
    switch (f) {
        case BoundFormula::Polyakov: return "polyakov";
        case BoundFormula::Lemma2: return "lemma2";
        case BoundFormula::ExpLemma: return "explemma";
        case BoundFormula::ExpSet: return "expset";
        case BoundFormula::Theorem1Printed: return "theorem1_printed";
        case BoundFormula::Theorem1Derived: return "theorem1_derived";
    }
    return "unknown";
}

void validate(const PolyakovParams& p) {
    require_positive({{"alpha", p.alpha}, {"chi", p.chi}, {"p", p.p}, {"l", p.l}, {"k", p.k}}, "polyakov");
    require(p.p * p.k > 1.0, "polyakov: p*k > 1 violated");
    require(p.l * p.k < 1.0, "polyakov: l*k < 1 violated");
}

void validate(const Lemma2Params& p) {
    require_positive({{"alpha", p.alpha}, {"beta", p.beta}, {"p", p.p}, {"q", p.q}, {"r", p.r}, {"k", p.k}},
                     "lemma2");
    require(p.p * p.k > 1.0, "lemma2: p*k > 1 violated");
    require(p.r * p.k < 1.0, "lemma2: r*k < 1 violated");
    require(std::isfinite(p.w) && p.w > 0.0 && p.w < 1.0, "lemma2: 0 < w < 1 violated");
}

void validate(const ExpLemmaParams& p) {
    require_positive({{"alpha", p.alpha},
                      {"beta", p.beta},
                      {"gamma", p.gamma},
                      {"chi", p.chi},
                      {"p", p.p},
                      {"q", p.q},
                      {"r", p.r},
                      {"l", p.l},
                      {"k", p.k}},
                     "explemma");
    require(p.p * p.k > 1.0, "explemma: p*k > 1 violated");
    require(p.l * p.k < 1.0, "explemma: l*k < 1 violated");
    require(std::isfinite(p.w) && p.w > 0.0 && p.w <= 1.0, "explemma: 0 < w <= 1 violated");
}

void validate(const ExpSetParams& p) {
    require_positive({{"alpha", p.alpha},
                      {"beta", p.beta},
                      {"gamma", p.gamma},
                      {"p", p.p},
                      {"q", p.q},
                      {"r", p.r},
                      {"k", p.k}},
                     "expset");
    require(p.p * p.k > 1.0, "expset: p*k > 1 violated");
    require(std::isfinite(p.w) && p.w > 0.0 && p.w < 1.0, "expset: 0 < w < 1 violated");
}

BoundReport polyakov_bound(const PolyakovParams& p) {
    validate(p);
    return make_report(BoundFormula::Polyakov,
                       {decay_phase(p.alpha, p.p, p.k), 1.0 / (std::pow(p.chi, p.k) * (1.0 - p.l * p.k))});
}

BoundReport lemma2_bound(const Lemma2Params& p) {
    validate(p);
    const double k = p.k;
    const double middle = (1.0 - std::pow(p.w, 1.0 + p.q * k)) / (std::pow(p.beta, k) * (1.0 + p.q * k));
    const double last = std::pow(p.w, 1.0 - p.r * k) / (std::pow(p.beta, k) * (1.0 - p.r * k));
    return make_report(BoundFormula::Lemma2, {decay_phase(p.alpha, p.p, k), middle, last});
}

BoundReport explemma_bound(const ExpLemmaParams& p) {
    validate(p);
    return make_report(BoundFormula::ExpLemma,
                       {decay_phase(p.alpha, p.p, p.k),
                        exp_quotient_phase(p.beta, p.gamma, p.q, p.r, p.k, p.w, "explemma"),
                        terminal_phase(p.chi, p.l, p.k, p.w)});
}

BoundReport expset_bound(const ExpSetParams& p) {
    validate(p);
    return make_report(BoundFormula::ExpSet,
                       {decay_phase(p.alpha, p.p, p.k),
                        exp_quotient_phase(p.beta, p.gamma, p.q, p.r, p.k, p.w, "expset")});
}

ExpSetParams stage_to_expset(const StageBoundParams& s, double w) {
    ExpSetParams out;
    out.alpha = s.alpha * std::pow(2.0, 0.5 * (s.p + 1.0));
    out.p = 0.5 * (s.p + 1.0);
    out.beta = s.beta * std::pow(2.0, 0.5 * (1.0 - s.q));
    out.q = 0.5 * (s.q - 1.0);
    out.gamma = s.gamma * std::pow(2.0, -0.5 * s.r);
    out.r = 0.5 * s.r;
    out.k = 1.0;
    out.w = w;
    return out;
}

ExpLemmaParams stage_to_explemma(const StageBoundParams& s, const TailBoundParams& tail, double w) {
    const ExpSetParams e = stage_to_expset(s, w);
    ExpLemmaParams out;
    out.alpha = e.alpha;
    out.beta = e.beta;
    out.gamma = e.gamma;
    out.p = e.p;
    out.q = e.q;
    out.r = e.r;
    out.chi = tail.chi * std::pow(2.0, 0.5 * (tail.l + 1.0));
    out.l = 0.5 * (tail.l + 1.0);
    out.k = 1.0;
    out.w = w;
    return out;
}

std::vector<StageBounds> theorem1_bounds(std::span<const StageBoundParams> stages,
                                         const TailBoundParams& tail, std::span<const double> w) {
    require(!stages.empty(), "theorem1: at least one stage required");
    require(stages.size() == w.size(), "theorem1: one w per stage required");
    require(positive(tail.chi), "theorem1: chi must be > 0");
    require(tail.l > 0.0 && tail.l < 1.0, "theorem1: 0 < l < 1 violated");

    const double sqrt2 = std::sqrt(2.0);
    // The printed formulas divide every exponential phase by the first stage's beta.
    const double beta_printed = stages.front().beta;

    std::vector<StageBounds> out;
    out.reserve(stages.size());
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const StageBoundParams& s = stages[i];
        const bool last = i + 1 == stages.size();
        const double wi = w[i];
        require(std::isfinite(wi) && wi > 0.0 && wi <= 1.0,
                "theorem1: stage " + std::to_string(i + 1) + ": 0 < w <= 1 violated");
        require_positive({{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"p", s.p}, {"q", s.q},
                          {"r", s.r}},
                         "theorem1");

        StageBounds sb;
        sb.stage = i + 1;
        sb.w = wi;

        std::vector<double> printed{sqrt2 / (s.alpha * (s.p + 1.0))};
        const double shrink = 1.0 - std::pow(wi, 0.5 * (1.0 + s.q));
        printed.push_back(shrink == 0.0 ? 0.0
                                        : 2.0 * sqrt2 *
                                              checked_exp(sqrt2 * s.gamma / std::pow(wi, s.r), "theorem1") *
                                              shrink / (beta_printed * (1.0 + s.q)));
        if (last) printed.push_back(sqrt2 * std::pow(wi, 0.5 * (1.0 - tail.l)) / (tail.chi * (1.0 - tail.l)));
        sb.printed = make_report(BoundFormula::Theorem1Printed, std::move(printed));

        BoundReport derived;
        if (last) {
            derived = explemma_bound(stage_to_explemma(s, tail, wi));
        } else if (wi == 1.0) {
            // The set {V <= 1} is reached once the polynomial phase is over.
            derived = expset_bound(stage_to_expset(s, 0.5));
            derived.terms[1] = 0.0;
            derived.total = derived.terms[0];
        } else {
            derived = expset_bound(stage_to_expset(s, wi));
        }
        derived.formula = BoundFormula::Theorem1Derived;
        sb.derived = std::move(derived);
        out.push_back(std::move(sb));
    }
    return out;
}

}  // namespace fixtime

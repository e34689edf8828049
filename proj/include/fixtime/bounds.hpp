#pragma once

// Closed-form settling-time and reach-time bounds for Lyapunov differential
// inequalities of the form  D+V <= -[ ... ]^k.  Each calculator validates its
// parameter record and reports the bound split into its additive phases:
// V > 1, w < V <= 1 and V <= w.

#include <span>
#include <string>
#include <vector>

namespace fixtime {

/// D+V <= -[alpha V^p + chi V^l]^k,  p k > 1,  l k < 1.
struct PolyakovParams {
    double alpha = 1.0;
    double chi = 1.0;
    double p = 3.0;
    double l = 1.0 / 3.0;
    double k = 1.0;
};

/// D+V <= -[alpha V^p + beta V^{-q 1(1-V) + (q+r) 1(w-V)}]^k,  p k > 1,  r k < 1,  0 < w < 1.
struct Lemma2Params {
    double alpha = 1.0;
    double beta = 1.0;
    double p = 3.0;
    double q = 3.0;
    double r = 1.0 / 3.0;
    double k = 1.0;
    double w = 0.01;
};

/// D+V <= -[alpha V^p + beta V^{-q} e^{-gamma/V^r} + chi V^l]^k,  p k > 1,  l k < 1,  0 < w <= 1.
struct ExpLemmaParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.05;
    double chi = 1.0;
    double p = 3.0;
    double q = 3.0;
    double r = 0.5;
    double l = 1.0 / 3.0;
    double k = 1.0;
    double w = 0.02;
};

/// D+V <= -[alpha V^p + beta V^{-q} e^{-gamma/V^r}]^k,  p k > 1,  0 < w < 1.
/// Bounds the time to reach {V <= w}.
struct ExpSetParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.05;
    double p = 3.0;
    double q = 3.0;
    double r = 0.5;
    double k = 1.0;
    double w = 0.01;
};

enum class BoundFormula { Polyakov, Lemma2, ExpLemma, ExpSet, Theorem1Printed, Theorem1Derived };

std::string formula_id(BoundFormula f);

struct BoundReport {
    double total = 0.0;
    std::vector<double> terms;
    BoundFormula formula = BoundFormula::Polyakov;
};

void validate(const PolyakovParams& p);
void validate(const Lemma2Params& p);
void validate(const ExpLemmaParams& p);
void validate(const ExpSetParams& p);

BoundReport polyakov_bound(const PolyakovParams& p);
BoundReport lemma2_bound(const Lemma2Params& p);
BoundReport explemma_bound(const ExpLemmaParams& p);
BoundReport expset_bound(const ExpSetParams& p);

/// One backstepping stage  e' = -alpha e^p - beta e^{-q} exp(-gamma/|e|^r).
struct StageBoundParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double p = 3.0;
    double q = 3.0;
    double r = 0.8;
};

/// Final-stage term  -chi |e|^l sign(e).
struct TailBoundParams {
    double chi = 1.0;
    double l = 1.0 / 3.0;
};

struct StageBounds {
    std::size_t stage = 0;
    double w = 0.0;
    /// Formula as printed for the backstepping theorem.
    BoundReport printed;
    /// Obtained by rewriting the stage dynamics in V = e^2/2 and feeding the
    /// exact coefficients to expset_bound (inner stages) or explemma_bound
    /// (final stage).
    BoundReport derived;
};

/// Maps a stage written in e to the V = e^2/2 coefficients of the
/// exponential-set inequality (k = 1):
///   alpha' = alpha 2^{(p+1)/2}, p' = (p+1)/2, beta' = beta 2^{(1-q)/2},
///   q' = (q-1)/2, gamma' = gamma 2^{-r/2}, r' = r/2.
ExpSetParams stage_to_expset(const StageBoundParams& s, double w);
ExpLemmaParams stage_to_explemma(const StageBoundParams& s, const TailBoundParams& tail, double w);

/// Per-stage bounds for an order-n backstepping design; stages.size() == w.size() == n.
/// The last stage carries the tail term. Each w lies in (0, 1].
std::vector<StageBounds> theorem1_bounds(std::span<const StageBoundParams> stages,
                                         const TailBoundParams& tail, std::span<const double> w);

}  // namespace fixtime

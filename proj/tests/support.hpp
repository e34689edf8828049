#pragma once

// Shared helpers for the test binaries: seeded samplers and tolerance checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fixtime/laws.hpp"

namespace testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// exp of a uniform draw in [ln lo, ln hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline double random_sign(std::mt19937_64& rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

/// |x| log-uniform in [lo, hi] with a random sign.
inline double signed_log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return random_sign(rng) * log_uniform(rng, lo, hi);
}

inline bool close(double a, double b, double abs_tol, double rel_tol) {
    return std::fabs(a - b) <= std::max(abs_tol, rel_tol * std::fabs(b));
}

inline std::vector<fixtime::ScalarLaw> example_laws() {
    using namespace fixtime::presets;
    return {law26_linear(),   law27_relay(),        law28_frac_power(), law29_polyakov(),
            law30_hyperexp(), law31_heaviside_exp(), law32_exp_tail(),  law33_exp_set()};
}

}  // namespace testing

#pragma once

// Data-parallel kernels. Each has a serial reference kept for testing; the
// OpenMP variants must produce bit-identical results.

#include "fixtime/sim.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fixtime {

class ScalarLaw;

enum class Execution { Serial, Parallel };

struct SimJob {
    std::string label;
    System system;
    std::vector<double> x0;
    SimConfig cfg;
};

struct SimOutcome {
    std::optional<Trajectory> trajectory;
    std::string error;        ///< empty on success
    bool solver_failure = false; ///< true for SolverError and subclasses
};

/// Independent integrations; results are stored by job index.
std::vector<SimOutcome> run_batch(std::span<const SimJob> jobs, Execution exec = Execution::Parallel);

/// out[i] = eval_law(law, xs[i]).
void eval_law_batch(const ScalarLaw& law, std::span<const double> xs, std::span<double> out,
                    Execution exec = Execution::Parallel);

/// out[i] = lyap_ddot(law, xs[i]); xs must exclude singular points.
void lyap_ddot_batch(const ScalarLaw& law, std::span<const double> xs, std::span<double> out,
                     Execution exec = Execution::Parallel);

} // namespace fixtime

#include "fixtime/batch.hpp"

#include "fixtime/errors.hpp"
#include "fixtime/laws.hpp"

#include <stdexcept>

namespace fixtime {

namespace {

SimOutcome run_one(const SimJob& job) noexcept
{
    SimOutcome out;
    try {
        out.trajectory = integrate(job.system, job.x0, job.cfg);
    } catch (const SolverError& e) {
        out.error = e.what();
        out.solver_failure = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

void require_same_size(std::size_t a, std::size_t b)
{
    if (a != b)
        throw std::invalid_argument("batch kernel: input and output sizes differ");
}

} // namespace

std::vector<SimOutcome> run_batch(std::span<const SimJob> jobs, Execution exec)
{
    std::vector<SimOutcome> out(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
    if (exec == Execution::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = run_one(jobs[i]);
        return out;
    }
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = run_one(jobs[i]);
    return out;
}

void eval_law_batch(const ScalarLaw& law, std::span<const double> xs, std::span<double> out, Execution exec)
{
    require_same_size(xs.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (exec == Execution::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = eval_law(law, xs[i]);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = eval_law(law, xs[i]);
}

void lyap_ddot_batch(const ScalarLaw& law, std::span<const double> xs, std::span<double> out, Execution exec)
{
    require_same_size(xs.size(), out.size());
    for (double x : xs)
        if (x == 0.0 && law.family() != LawFamily::Linear)
            throw SingularPoint("lyap_ddot_batch: sample at the singular origin");
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (exec == Execution::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = lyap_ddot(law, xs[i]);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = lyap_ddot(law, xs[i]);
}

} // namespace fixtime

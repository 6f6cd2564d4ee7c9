#include "corrcolor/first_moment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "corrcolor/parallel.hpp"
#include "corrcolor/rng.hpp"
#include "corrcolor/solver.hpp"

namespace corrcolor {

double alon_bound(double d)
{
    if (!(d >= 2.0 * std::numbers::e)) {
        std::ostringstream msg;
        msg << "average degree " << d << " is below 2e; the bound needs ln(d/2) >= 1";
        throw DomainError(msg.str());
    }
    double half = d / 2.0;
    return half / std::log(half);
}

FirstMomentBound first_moment_bound(std::size_t n, std::size_t m, std::size_t k)
{
    if (k == 0)
        throw DomainError("k must be at least 1");
    double kd = static_cast<double>(k);
    double nd = static_cast<double>(n);
    double md = static_cast<double>(m);
    FirstMomentBound out;
    out.value = std::exp(nd * std::log(kd) - md / kd);
    out.below_one = n > 0 && kd * std::log(kd) < md / nd;
    return out;
}

double expected_colorings(std::size_t n, std::size_t m, std::size_t k)
{
    if (k == 0)
        throw DomainError("k must be at least 1");
    double kd = static_cast<double>(k);
    return std::pow(kd, static_cast<double>(n)) * std::pow(1.0 - 1.0 / kd, static_cast<double>(m));
}

Cover lb_trial_cover(const Graph& g, std::size_t k, std::uint64_t seed, std::size_t trial, CoverMode mode)
{
    return random_cover(g, k, derive_seed(seed, "lb-trial", trial), mode);
}

LowerBoundReport run_lb_experiment(const Graph& g, std::size_t k, std::size_t trials, std::uint64_t seed,
                                   const LowerBoundOptions& options)
{
    LowerBoundReport report;
    report.n = g.num_vertices();
    report.m = g.num_edges();
    report.d = g.num_vertices() > 0 ? average_degree(g) : 0.0;
    report.k = k;
    if (report.d >= 2.0 * std::numbers::e)
        report.alon_bound = alon_bound(report.d);
    report.first_moment = first_moment_bound(report.n, report.m, k);
    report.expected_colorings_exact = expected_colorings(report.n, report.m, k);
    report.mode = options.mode.kind == CoverMode::Kind::perfect ? "perfect" : "bernoulli";
    report.trials = trials;
    report.seed = seed;

    std::vector<std::int64_t> counts(trials, -1);
    SolveOptions solve;
    solve.node_budget = options.node_budget;
    parallel_for(trials, [&](std::size_t t) {
        Cover c = lb_trial_cover(g, k, seed, t, options.mode);
        try {
            counts[t] = static_cast<std::int64_t>(count_colorings(g, c, solve).count);
        } catch (const BudgetExceeded&) {
            counts[t] = -1;
        }
    });

    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        if (counts[t] < 0) {
            ++report.failed_trials;
            continue;
        }
        ++ok;
        double x = static_cast<double>(counts[t]);
        sum += x;
        sum_sq += x * x;
        if (counts[t] > 0)
            ++report.colorable_count;
        else if (!report.witness_trial)
            report.witness_trial = t;
    }
    if (ok > 0) {
        double mean = sum / static_cast<double>(ok);
        report.mean_colorings_empirical = mean;
        if (ok > 1) {
            double var = (sum_sq - static_cast<double>(ok) * mean * mean) / static_cast<double>(ok - 1);
            report.mean_colorings_stderr = std::sqrt(std::max(0.0, var) / static_cast<double>(ok));
        }
    }
    if (report.witness_trial)
        report.witness = lb_trial_cover(g, k, seed, *report.witness_trial, options.mode);
    report.per_trial_counts = std::move(counts);
    return report;
}

}  // namespace corrcolor

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrcolor/cover.hpp"
#include "corrcolor/graph.hpp"

namespace corrcolor {

/// (d/2) / ln(d/2), the lower bound on the correspondence chromatic number of
/// a graph with average degree d. Throws DomainError for d < 2e.
double alon_bound(double d);

struct FirstMomentBound {
    double value = 0.0;        ///< k^n * exp(-m/k)
    bool below_one = false;    ///< k ln k < m/n, which forces value < 1
};

/// Upper bound on the probability that a uniform random k-fold cover of a
/// graph with n vertices and m edges is colorable.
FirstMomentBound first_moment_bound(std::size_t n, std::size_t m, std::size_t k);

/// k^n (1 - 1/k)^m: expected number of colorings of a uniform perfect-matching
/// random cover.
double expected_colorings(std::size_t n, std::size_t m, std::size_t k);

struct LowerBoundReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double d = 0.0;
    std::size_t k = 0;
    std::optional<double> alon_bound;  ///< absent when d < 2e
    FirstMomentBound first_moment;
    double expected_colorings_exact = 0.0;
    std::string mode;
    std::size_t trials = 0;
    std::size_t colorable_count = 0;
    std::size_t failed_trials = 0;  ///< trials whose count hit the node budget
    double mean_colorings_empirical = 0.0;
    double mean_colorings_stderr = 0.0;
    std::uint64_t seed = 0;

    std::vector<std::int64_t> per_trial_counts;  ///< -1 for failed trials
    std::optional<std::size_t> witness_trial;    ///< first non-colorable trial
    std::optional<Cover> witness;
};

struct LowerBoundOptions {
    CoverMode mode = CoverMode::perfect();
    std::uint64_t node_budget = 100'000'000;
};

/// Samples `trials` random covers (trial t uses a seed derived from (seed, t)),
/// counts the colorings of each exactly and aggregates. Trials run in
/// parallel; aggregation is in trial order, so the report does not depend on
/// the thread count.
LowerBoundReport run_lb_experiment(const Graph& g, std::size_t k, std::size_t trials, std::uint64_t seed,
                                   const LowerBoundOptions& options = {});

/// The cover sampled for trial t of run_lb_experiment.
Cover lb_trial_cover(const Graph& g, std::size_t k, std::uint64_t seed, std::size_t trial, CoverMode mode);

}  // namespace corrcolor

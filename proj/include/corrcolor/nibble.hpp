#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "corrcolor/cover.hpp"
#include "corrcolor/graph.hpp"
#include "corrcolor/solver.hpp"

namespace corrcolor {

/// Color weights p: color id -> [0, p_hat]. Colors with p == p_hat form the
/// cap set B, colors with 0 < p < p_hat are moderate.
///
/// p_hat is stored once and every capped weight is a copy of it, so membership
/// in B is an exact comparison.
struct Weighting {
    std::vector<double> p;
    double p_hat = 0.0;

    bool capped(ColorId x) const { return p[x] == p_hat; }
    bool moderate(ColorId x) const { return p[x] > 0.0 && p[x] < p_hat; }

    friend bool operator==(const Weighting&, const Weighting&) = default;
};

enum class ScheduleMode {
    fixed_istar,  ///< exactly i* reduct steps, then require niceness
    until_nice,   ///< stop at the first nice state, at most max_steps steps
};

/// Constants of the nibble. Defaults are the asymptotic values; relaxed()
/// keeps the algorithm and widens the per-step tolerances for small degrees.
struct NibbleParams {
    double ck = 120.0;                      ///< k = ceil(ck * Delta / ln Delta)
    double phat_exp = 11.0 / 12.0;          ///< p_hat = Delta^-phat_exp
    double entropy_slack = 1.0 / 40.0;      ///< Q(v) >= ln k - entropy_slack * ln Delta
    double mass_dev_exp = 1.0 / 10.0;       ///< |p(v) - 1| <= Delta^-mass_dev_exp
    double vertex_dev_exp = 1.0 / 6.0;      ///< |p'(v) - p(v)| <= Delta^-vertex_dev_exp
    double edge_dev_exp = 1.0 / 3.0;        ///< p'(uv) <= p(uv) + Delta^-edge_dev_exp / k
    double entropy_dev_exp = 1.0 / 6.0;     ///< entropy deviation ln Delta * Delta^-entropy_dev_exp
    double entropy_loss_coeff = 2.0;        ///< Q' >= Q - coeff * deg / (k ln Delta) - ...
    double degree_dev_exp = 2.0 / 3.0;      ///< degree deviation Delta^degree_dev_exp
    double shrink_coeff = 2.0 / 3.0;        ///< deg' <= deg (1 - shrink_coeff / ln Delta) + ...
    double saturation_exp = 1.0 / 10.0;     ///< saturated: |N_H(x) cap S| > Delta^saturation_exp
    double edge_mass_cap = 1.4142135623730951;  ///< p(uv) <= edge_mass_cap / k
    double niceness_target = 0.36 * 0.25 / 1.4142135623730951;  ///< (3/5)^2 (1/4) (1/sqrt 2)

    /// Multiplies the four deviation terms of the per-step targets.
    double tolerance_scale = 1.0;
    /// p_hat is raised to phat_floor / k when Delta^-phat_exp is smaller.
    double phat_floor = 0.0;

    ScheduleMode schedule = ScheduleMode::fixed_istar;
    std::size_t max_steps = 64;
    std::size_t max_retries_per_step = 100;
    std::size_t max_final_retries = 1000;
    /// On final_color exhaustion, search the nice reduct exactly for a
    /// moderate coloring instead of giving up.
    bool exact_fallback = true;
    std::uint64_t fallback_node_budget = 10'000'000;

    static NibbleParams paper();
    static NibbleParams relaxed();

    /// Throws InputError on non-positive constants or exponents outside (0, 1).
    void validate() const;
};

/// A reduct step's output: the removed set A and, for each removed vertex,
/// L(v) cap S (nonempty, inside W, so pairwise non-adjacent in H).
struct ReductRecord {
    std::vector<VertexId> removed;
    std::vector<std::vector<ColorId>> forced_colors;  ///< parallel to removed

    friend bool operator==(const ReductRecord&, const ReductRecord&) = default;
};

/// (G, L, H, p) during the nibble. The current graph is the subgraph of the
/// original induced by `alive`; lists are never modified, so H' is the part of
/// H whose colors belong to alive vertices.
struct ReductState {
    std::shared_ptr<const Graph> graph;
    std::shared_ptr<const Cover> cover;
    VertexMask alive;
    Weighting weighting;
    double delta = 3.0;  ///< the max-degree bound Delta, at least 3
    double alpha = 0.0;  ///< 1 / ln Delta
    std::vector<ReductRecord> history;
    std::size_t step = 0;

    bool is_alive(VertexId v) const { return alive[v] != 0; }
    bool color_alive(ColorId x) const
    {
        VertexId v = cover->owner(x);
        return v != kNoVertex && alive[v] != 0;
    }
    std::size_t num_alive() const;
    /// Degree in the current graph.
    std::size_t degree(VertexId v) const;
    std::size_t max_current_degree() const;
    std::size_t list_size() const;  ///< common list size, 0 if lists differ
};

/// Wraps an arbitrary weighting. Throws InputError when a weight lies outside
/// [0, p_hat] or the weighting does not cover every color.
ReductState make_state(std::shared_ptr<const Graph> g, std::shared_ptr<const Cover> c, Weighting w, double delta);

/// Derived constants for a run: Delta (clamped to >= 3), alpha and p_hat.
struct NibbleScale {
    double delta = 3.0;
    std::size_t k = 0;
    double alpha = 0.0;
    double p_hat = 0.0;
};

NibbleScale nibble_scale(std::size_t max_degree, std::size_t k, const NibbleParams& params);

/// Uniform weighting p = 1/k on every color with the scale's p_hat.
ReductState initial_state(std::shared_ptr<const Graph> g, std::shared_ptr<const Cover> c, const NibbleParams& params);

// Masses and entropy over the current graph.
double vertex_mass(const ReductState& s, VertexId v);
double edge_mass(const ReductState& s, VertexId u, VertexId v);
double entropy(const ReductState& s, VertexId v);
double moderate_mass(const ReductState& s, VertexId v);
double moderate_edge_mass(const ReductState& s, VertexId u, VertexId v);
/// Sum of p_m(uv) over the current neighbors u of v.
double moderate_edge_mass_sum(const ReductState& s, VertexId v);

/// Colors of L(v) with p = p_hat.
std::size_t capped_count(const ReductState& s, VertexId v);

struct NiceReport {
    std::optional<double> delta;  ///< the largest witness, min_v p_m(v)
    double min_moderate_mass = 0.0;  ///< a
    double weight_term = 0.0;        ///< b = 2 max moderate p(x)
    double edge_term = 0.0;          ///< c = 2 sqrt(max_v sum_u p_m(uv))
    std::string failure;             ///< which condition failed, when not nice
    VertexId failing_vertex = kNoVertex;
};

/// Niceness: some delta with max(b, c) <= delta <= a and delta > 0. An empty
/// graph is vacuously nice and reports delta = 1.
NiceReport check_nice(const ReductState& s);

/// Per-vertex/edge quantities after a step, over the pre-step graph (removed
/// vertices included). Vertex-indexed vectors span all original vertices.
struct StepStats {
    std::vector<VertexId> vertices;    ///< alive before the step
    std::vector<double> p_vertex;      ///< p'(v)
    std::vector<double> entropy;       ///< Q'(v)
    std::vector<std::size_t> degree;   ///< d'(v) = |N_G(v) cap V(G')|
    std::vector<Edge> edges;           ///< edges alive before the step
    std::vector<double> p_edge;        ///< p'(uv), parallel to edges
    std::vector<VertexId> removed;     ///< A
    std::size_t sampled = 0;           ///< |S|
    std::size_t isolated = 0;          ///< |W|
    std::size_t saturated = 0;         ///< colors with |N_H(x) cap S| > Delta^saturation_exp
};

struct StepResult {
    ReductState state;
    StepStats stats;
};

/// K(x) = prod over y in N_H(x) \ B (alive) of (1 - alpha p(y)).
double survival_product(const ReductState& s, ColorId x);

/// One randomized reduct step. Per-color randomness is drawn from a counter
/// stream keyed by (seed, step index, color), so the outcome is a pure
/// function of (state, seed).
StepResult reduct_step(const ReductState& s, std::uint64_t seed, double saturation_exp = 1.0 / 10.0);

/// Closed-form E[p'(x)]; equals p(x) up to rounding.
double expected_pprime(const ReductState& s, ColorId x);

struct TargetBounds {
    double vertex_dev = 0.0;
    double edge_dev = 0.0;
    double entropy_dev = 0.0;
    double degree_dev = 0.0;
    double shrink = 0.0;         ///< shrink_coeff / ln Delta
    double entropy_rate = 0.0;   ///< entropy_loss_coeff / (k ln Delta)
};

TargetBounds target_bounds(double delta, std::size_t k, const NibbleParams& params);

struct TargetViolation {
    int conclusion = 0;  ///< 1 vertex mass, 2 edge mass, 3 entropy, 4 degree, 5 support
    VertexId u = kNoVertex;
    VertexId v = kNoVertex;
    double value = 0.0;
    double bound = 0.0;
};

struct TargetReport {
    std::vector<TargetViolation> violations;
    bool pass() const { return violations.empty(); }
};

/// Verifies the per-step targets for surviving vertices and edges, with
/// deg_G(v) taken in the pre-step graph.
TargetReport check_reduct_targets(const ReductState& before, const ReductState& after, const StepStats& stats,
                                  const NibbleParams& params);

/// Counts of vertices/edges/colors violating the step hypotheses (mass near 1,
/// edge mass cap, entropy floor, support rule). Diagnostic only.
struct HypothesisReport {
    std::size_t mass = 0;
    std::size_t edge = 0;
    std::size_t entropy = 0;
    std::size_t support = 0;
};

HypothesisReport check_reduct_hypotheses(const ReductState& s, const NibbleParams& params);

/// Per-vertex bound deg(v) (1 - alpha p1 + alpha^2 (p2^2 + P Delta)) on E[d'(v)].
/// Throws DomainError when p1 <= p_m(v) <= p2 or p(uv) <= P fails somewhere.
std::vector<double> degree_expectation_bound(const ReductState& s, double p1, double p2, double P);

/// ceil(ck * Delta / ln Delta).
std::size_t paper_list_size(double delta, const NibbleParams& params);
double istar_left_side(double delta, std::size_t i, const NibbleParams& params);
double istar_target(std::size_t k, const NibbleParams& params);

/// Least i >= 0 with istar_left_side(delta, i) <= istar_target(k), by linear
/// scan up to 10^6. Throws DomainError when none exists (or delta < 3).
std::size_t compute_istar(double delta, std::size_t k, const NibbleParams& params);
std::size_t compute_istar(double delta, const NibbleParams& params);

struct FinalColorResult {
    std::optional<Coloring> coloring;  ///< over the current graph, kNoColor elsewhere
    std::size_t attempts = 0;
};

/// Samples M by including each moderate color independently with probability
/// 2 p(x) / delta, drops every color matched in H to another member of M and,
/// if every alive vertex keeps a color, returns the lowest surviving id per
/// vertex. Resamples up to max_final_retries times.
FinalColorResult final_color(const ReductState& s, double delta, std::uint64_t seed, const NibbleParams& params);

/// Colors every vertex removed along `history` with the lowest id of its
/// forced set, newest record first. Throws std::logic_error if the result is
/// not a valid coloring of (g, c).
Coloring extend_coloring(const Coloring& inner, const std::vector<ReductRecord>& history, const Graph& g,
                         const Cover& c);

struct TrajectoryRow {
    std::size_t step = 0;
    double min_pv = 0.0;
    double max_pv = 0.0;
    double min_q = 0.0;
    std::size_t max_deg = 0;
    std::size_t removed = 0;
    std::size_t retries = 0;
    std::size_t alive = 0;
    std::size_t saturated = 0;
    HypothesisReport hypotheses;
};

enum class NibbleStatus {
    success,
    schedule_infeasible,
    step_retries_exhausted,
    not_nice,
    final_color_exhausted,
};

const char* to_string(NibbleStatus status);

struct NibbleOutcome {
    NibbleStatus status = NibbleStatus::success;
    std::optional<Coloring> coloring;
    std::string message;
    std::vector<TrajectoryRow> trajectory;
    NibbleScale scale;
    std::size_t planned_steps = 0;
    std::optional<double> nice_delta;
    std::string final_route;  ///< "resampling" or "exact_fallback"
    std::size_t final_attempts = 0;
    std::vector<TargetViolation> last_violations;
    std::optional<ReductState> final_state;  ///< the reduct handed to the niceness check
};

/// Full pipeline: uniform weights, reduct steps (each retried with fresh
/// seeds until its targets hold), niceness check, final coloring and
/// extension back to the input graph. Throws DomainError when g is not
/// triangle-free or the lists are not all the same size, InputError when the
/// cover is invalid.
NibbleOutcome run_nibble(const Graph& g, const Cover& c, const NibbleParams& params, std::uint64_t seed);

/// Sample mean and standard error.
struct Moments {
    double mean = 0.0;
    double stderr_ = 0.0;
};

struct StepMoments {
    std::size_t trials = 0;
    std::vector<Moments> p_vertex;  ///< by vertex id
    std::vector<Moments> entropy;
    std::vector<Moments> degree;
    std::vector<Edge> edges;
    std::vector<Moments> p_edge;
    double mean_saturated = 0.0;
};

/// Runs `trials` independent reduct steps from the same state and reports
/// per-vertex/edge moments of p', Q' and d'. Deterministic given seed.
StepMoments sample_step_moments(const ReductState& s, std::size_t trials, std::uint64_t seed);

}  // namespace corrcolor

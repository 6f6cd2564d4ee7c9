#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "corrcolor/nibble.hpp"
#include "corrcolor/rng.hpp"

namespace corrcolor {

std::size_t paper_list_size(double delta, const NibbleParams& params)
{
    if (!(delta > std::exp(1.0)))
        throw DomainError("list size formula needs Delta > e");
    return static_cast<std::size_t>(std::ceil(params.ck * delta / std::log(delta)));
}

double istar_left_side(double delta, std::size_t i, const NibbleParams& params)
{
    double shrink = 1.0 - params.shrink_coeff / std::log(delta);
    double id = static_cast<double>(i);
    return delta * std::pow(shrink, id) + id * std::pow(delta, params.degree_dev_exp);
}

double istar_target(std::size_t k, const NibbleParams& params)
{
    return params.niceness_target * static_cast<double>(k);
}

std::size_t compute_istar(double delta, std::size_t k, const NibbleParams& params)
{
    if (!(delta >= 3.0))
        throw DomainError("i* needs Delta >= 3");
    constexpr std::size_t kScanLimit = 1'000'000;
    const double target = istar_target(k, params);
    for (std::size_t i = 0; i <= kScanLimit; ++i)
        if (istar_left_side(delta, i, params) <= target)
            return i;
    std::ostringstream msg;
    msg << "no step count i <= " << kScanLimit << " brings the degree bound under " << target << " for Delta = " << delta;
    throw DomainError(msg.str());
}

std::size_t compute_istar(double delta, const NibbleParams& params)
{
    return compute_istar(delta, paper_list_size(delta, params), params);
}

const char* to_string(NibbleStatus status)
{
    switch (status) {
    case NibbleStatus::success: return "success";
    case NibbleStatus::schedule_infeasible: return "schedule_infeasible";
    case NibbleStatus::step_retries_exhausted: return "step_retries_exhausted";
    case NibbleStatus::not_nice: return "not_nice";
    case NibbleStatus::final_color_exhausted: return "final_color_exhausted";
    }
    return "unknown";
}

namespace {

TrajectoryRow snapshot(const ReductState& s, const NibbleParams& params, std::size_t removed, std::size_t retries,
                       std::size_t saturated)
{
    TrajectoryRow row;
    row.step = s.step;
    row.removed = removed;
    row.retries = retries;
    row.saturated = saturated;
    row.alive = s.num_alive();
    row.max_deg = s.max_current_degree();
    row.min_pv = std::numeric_limits<double>::infinity();
    row.max_pv = -std::numeric_limits<double>::infinity();
    row.min_q = std::numeric_limits<double>::infinity();
    for (VertexId v = 0; v < s.graph->num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        double pv = vertex_mass(s, v);
        row.min_pv = std::min(row.min_pv, pv);
        row.max_pv = std::max(row.max_pv, pv);
        row.min_q = std::min(row.min_q, entropy(s, v));
    }
    if (row.alive == 0)
        row.min_pv = row.max_pv = row.min_q = 0.0;
    row.hypotheses = check_reduct_hypotheses(s, params);
    return row;
}

std::string describe(const TargetViolation& v)
{
    std::ostringstream msg;
    msg << "target " << v.conclusion << " at vertex " << v.u;
    if (v.v != kNoVertex)
        msg << "," << v.v;
    msg << ": value " << v.value << " vs bound " << v.bound;
    return msg.str();
}

}  // namespace

NibbleOutcome run_nibble(const Graph& g, const Cover& c, const NibbleParams& params, std::uint64_t seed)
{
    params.validate();
    if (!is_triangle_free(g))
        throw DomainError("the nibble requires a triangle-free graph");
    CoverReport cover_report = validate_cover(g, c);
    if (!cover_report.ok())
        throw InputError("invalid cover: " + cover_report.violations.front());

    auto graph = std::make_shared<const Graph>(g);
    auto cover = std::make_shared<const Cover>(c);
    ReductState state = initial_state(graph, cover, params);

    NibbleOutcome out;
    out.scale = nibble_scale(max_degree(g), state.list_size(), params);
    out.trajectory.push_back(snapshot(state, params, 0, 0, 0));

    if (params.schedule == ScheduleMode::fixed_istar) {
        try {
            out.planned_steps = compute_istar(out.scale.delta, out.scale.k, params);
        } catch (const DomainError& e) {
            out.status = NibbleStatus::schedule_infeasible;
            out.message = e.what();
            return out;
        }
    } else {
        out.planned_steps = params.max_steps;
    }

    for (std::size_t i = 0; i < out.planned_steps; ++i) {
        if (state.num_alive() == 0)
            break;
        if (params.schedule == ScheduleMode::until_nice && check_nice(state).delta)
            break;

        const std::uint64_t step_seed = derive_seed(seed, "step", i);
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < params.max_retries_per_step; ++attempt) {
            StepResult r = reduct_step(state, derive_seed(step_seed, attempt), params.saturation_exp);
            TargetReport targets = check_reduct_targets(state, r.state, r.stats, params);
            if (!targets.pass()) {
                out.last_violations = std::move(targets.violations);
                continue;
            }
            out.trajectory.push_back(snapshot(r.state, params, r.stats.removed.size(), attempt, r.stats.saturated));
            state = std::move(r.state);
            accepted = true;
            break;
        }
        if (!accepted) {
            out.status = NibbleStatus::step_retries_exhausted;
            std::ostringstream msg;
            msg << "step " << i << " missed its targets in all " << params.max_retries_per_step << " attempts";
            if (!out.last_violations.empty())
                msg << "; last: " << describe(out.last_violations.front());
            out.message = msg.str();
            return out;
        }
        out.last_violations.clear();
    }

    NiceReport nice = check_nice(state);
    out.final_state = state;
    if (!nice.delta) {
        out.status = NibbleStatus::not_nice;
        std::ostringstream msg;
        msg << "final reduct is not nice: " << nice.failure << " at vertex " << nice.failing_vertex
            << " (a = " << nice.min_moderate_mass << ", b = " << nice.weight_term << ", c = " << nice.edge_term << ")";
        out.message = msg.str();
        return out;
    }
    out.nice_delta = nice.delta;

    FinalColorResult final = final_color(state, *nice.delta, derive_seed(seed, "final"), params);
    out.final_attempts = final.attempts;
    std::optional<Coloring> inner = std::move(final.coloring);
    out.final_route = "resampling";
    if (!inner && params.exact_fallback) {
        SolveOptions options;
        options.active = state.alive;
        options.node_budget = params.fallback_node_budget;
        std::vector<std::vector<ColorId>> moderate(g.num_vertices());
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            for (ColorId x : c.list(v))
                if (state.weighting.moderate(x))
                    moderate[v].push_back(x);
        options.restrict = std::move(moderate);
        try {
            inner = solve_exact(g, c, options).coloring;
            out.final_route = "exact_fallback";
        } catch (const BudgetExceeded&) {
        }
    }
    if (!inner) {
        out.status = NibbleStatus::final_color_exhausted;
        std::ostringstream msg;
        msg << "no moderate coloring of the final reduct after " << final.attempts << " resampling attempts";
        if (params.exact_fallback)
            msg << " and the exact fallback";
        out.message = msg.str();
        return out;
    }

    out.coloring = extend_coloring(*inner, state.history, g, c);
    out.status = NibbleStatus::success;
    return out;
}

}  // namespace corrcolor

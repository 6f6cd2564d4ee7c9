#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "corrcolor/nibble.hpp"
#include "corrcolor/rng.hpp"

namespace corrcolor {

namespace {

// Counter-stream channels for the two independent draws per color.
constexpr std::uint64_t kSampleChannel = 0;
constexpr std::uint64_t kRetainChannel = 1;

double plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

// q(x); only meaningful when p(x)/K(x) > p_hat, which forces K(x) < 1.
double retain_probability(double p, double p_hat, double survival)
{
    if (!(1.0 - survival > 0.0))
        throw std::logic_error("retain probability evaluated with K(x) = 1");
    return (p / p_hat - survival) / (1.0 - survival);
}

}  // namespace

double survival_product(const ReductState& s, ColorId x)
{
    const auto& w = s.weighting;
    double product = 1.0;
    for (ColorId y : s.cover->neighbors(x))
        if (s.color_alive(y) && !w.capped(y))
            product *= 1.0 - s.alpha * w.p[y];
    return product;
}

double expected_pprime(const ReductState& s, ColorId x)
{
    const auto& w = s.weighting;
    if (w.capped(x))
        return w.p_hat;
    double survival = survival_product(s, x);
    double ratio = w.p[x] / survival;
    if (ratio <= w.p_hat)
        return survival * ratio;
    double q = retain_probability(w.p[x], w.p_hat, survival);
    return survival * w.p_hat + (1.0 - survival) * q * w.p_hat;
}

StepResult reduct_step(const ReductState& s, std::uint64_t seed, double saturation_exp)
{
    const auto& g = *s.graph;
    const auto& c = *s.cover;
    const auto& w = s.weighting;
    const std::size_t num_colors = c.num_colors();
    const std::uint64_t key = derive_seed(seed, "reduct-step", s.step);

    // S: each alive color outside B joins with probability alpha p(x).
    std::vector<char> sampled(num_colors, 0);
    std::size_t sampled_count = 0;
    for (ColorId x = 0; x < num_colors; ++x) {
        if (!s.color_alive(x) || w.capped(x) || w.p[x] <= 0.0)
            continue;
        if (counter_uniform(key, x, kSampleChannel) < s.alpha * w.p[x]) {
            sampled[x] = 1;
            ++sampled_count;
        }
    }

    const double saturation_level = std::pow(s.delta, saturation_exp);
    std::vector<char> hit(num_colors, 0);
    std::vector<double> next = w.p;
    std::size_t saturated = 0;
    for (ColorId x = 0; x < num_colors; ++x) {
        if (!s.color_alive(x))
            continue;
        std::size_t hits = 0;
        for (ColorId y : c.neighbors(x))
            if (s.color_alive(y) && sampled[y])
                ++hits;
        hit[x] = hits > 0;
        if (static_cast<double>(hits) > saturation_level)
            ++saturated;

        if (w.capped(x)) {
            next[x] = w.p_hat;
            continue;
        }
        double survival = survival_product(s, x);
        double ratio = w.p[x] / survival;
        if (!hit[x]) {
            next[x] = ratio > w.p_hat ? w.p_hat : ratio;
        } else if (ratio <= w.p_hat) {
            next[x] = 0.0;
        } else {
            double q = retain_probability(w.p[x], w.p_hat, survival);
            next[x] = counter_uniform(key, x, kRetainChannel) < q ? w.p_hat : 0.0;
        }
    }

    // W = sampled colors with no sampled neighbor; A = vertices whose sampled
    // colors are nonempty and all in W.
    StepResult out;
    ReductRecord record;
    std::size_t isolated = 0;
    for (ColorId x = 0; x < num_colors; ++x)
        isolated += (sampled[x] && !hit[x]) ? 1 : 0;

    VertexMask alive = s.alive;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        std::vector<ColorId> forced;
        bool inside_w = true;
        for (ColorId x : c.list(v)) {
            if (!sampled[x])
                continue;
            forced.push_back(x);
            if (hit[x])
                inside_w = false;
        }
        if (!forced.empty() && inside_w) {
            alive[v] = 0;
            record.removed.push_back(v);
            record.forced_colors.push_back(std::move(forced));
        }
    }

    StepStats& stats = out.stats;
    stats.p_vertex.assign(g.num_vertices(), 0.0);
    stats.entropy.assign(g.num_vertices(), 0.0);
    stats.degree.assign(g.num_vertices(), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        stats.vertices.push_back(v);
        double mass = 0.0;
        double q = 0.0;
        for (ColorId x : c.list(v)) {
            mass += next[x];
            q += plogp(next[x]);
        }
        stats.p_vertex[v] = mass;
        stats.entropy[v] = q;
        std::size_t d = 0;
        for (VertexId u : g.neighbors(v))
            d += alive[u] ? 1 : 0;
        stats.degree[v] = d;
    }
    for (const auto& [u, v] : g.edges()) {
        if (!s.is_alive(u) || !s.is_alive(v))
            continue;
        double mass = 0.0;
        for (ColorId x : c.list(u))
            for (ColorId y : c.neighbors(x))
                if (c.owner(y) == v)
                    mass += next[x] * next[y];
        stats.edges.emplace_back(u, v);
        stats.p_edge.push_back(mass);
    }
    stats.removed = record.removed;
    stats.sampled = sampled_count;
    stats.isolated = isolated;
    stats.saturated = saturated;

    ReductState& after = out.state;
    after.graph = s.graph;
    after.cover = s.cover;
    after.alive = std::move(alive);
    after.weighting.p = std::move(next);
    after.weighting.p_hat = w.p_hat;
    after.delta = s.delta;
    after.alpha = s.alpha;
    after.history = s.history;
    after.history.push_back(std::move(record));
    after.step = s.step + 1;
    return out;
}

TargetBounds target_bounds(double delta, std::size_t k, const NibbleParams& params)
{
    TargetBounds b;
    double log_delta = std::log(delta);
    double kd = static_cast<double>(std::max<std::size_t>(k, 1));
    b.vertex_dev = params.tolerance_scale * std::pow(delta, -params.vertex_dev_exp);
    b.edge_dev = params.tolerance_scale * std::pow(delta, -params.edge_dev_exp) / kd;
    b.entropy_dev = params.tolerance_scale * log_delta * std::pow(delta, -params.entropy_dev_exp);
    b.degree_dev = params.tolerance_scale * std::pow(delta, params.degree_dev_exp);
    b.shrink = params.shrink_coeff / log_delta;
    b.entropy_rate = params.entropy_loss_coeff / (kd * log_delta);
    return b;
}

TargetReport check_reduct_targets(const ReductState& before, const ReductState& after, const StepStats& stats,
                                  const NibbleParams& params)
{
    TargetReport report;
    const std::size_t k = before.list_size();
    const TargetBounds b = target_bounds(before.delta, k, params);
    auto flag = [&](int conclusion, VertexId u, VertexId v, double value, double bound) {
        report.violations.push_back({conclusion, u, v, value, bound});
    };

    for (VertexId v : stats.vertices) {
        if (!after.is_alive(v))
            continue;
        double deviation = std::abs(stats.p_vertex[v] - vertex_mass(before, v));
        if (deviation > b.vertex_dev)
            flag(1, v, kNoVertex, deviation, b.vertex_dev);

        double deg = static_cast<double>(before.degree(v));
        double entropy_floor = entropy(before, v) - b.entropy_rate * deg - b.entropy_dev;
        if (stats.entropy[v] < entropy_floor)
            flag(3, v, kNoVertex, stats.entropy[v], entropy_floor);

        double degree_cap = deg * (1.0 - b.shrink) + b.degree_dev;
        if (static_cast<double>(stats.degree[v]) > degree_cap)
            flag(4, v, kNoVertex, static_cast<double>(stats.degree[v]), degree_cap);

        if (k > 0) {
            double floor = 1.0 / static_cast<double>(k);
            for (ColorId x : before.cover->list(v)) {
                double px = after.weighting.p[x];
                if (px > 0.0 && px < floor)
                    flag(5, v, kNoVertex, px, floor);
            }
        }
    }

    for (std::size_t i = 0; i < stats.edges.size(); ++i) {
        const auto [u, v] = stats.edges[i];
        if (!after.is_alive(u) || !after.is_alive(v))
            continue;
        double cap = edge_mass(before, u, v) + b.edge_dev;
        if (stats.p_edge[i] > cap)
            flag(2, u, v, stats.p_edge[i], cap);
    }
    return report;
}

}  // namespace corrcolor

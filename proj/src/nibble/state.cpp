#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "corrcolor/nibble.hpp"

namespace corrcolor {

NibbleParams NibbleParams::paper() { return {}; }

NibbleParams NibbleParams::relaxed()
{
    NibbleParams p;
    p.ck = 6.2;
    p.tolerance_scale = 4.0;
    p.phat_floor = 2.0;
    p.schedule = ScheduleMode::until_nice;
    p.max_steps = 64;
    p.max_retries_per_step = 50;
    p.max_final_retries = 1000;
    return p;
}

void NibbleParams::validate() const
{
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0))
            throw InputError(std::string("nibble parameter ") + name + " must be positive");
    };
    auto exponent = [](double x, const char* name) {
        if (!(x > 0.0 && x < 1.0))
            throw InputError(std::string("nibble exponent ") + name + " must lie in (0, 1)");
    };
    positive(ck, "ck");
    positive(entropy_slack, "entropy_slack");
    positive(entropy_loss_coeff, "entropy_loss_coeff");
    positive(shrink_coeff, "shrink_coeff");
    positive(edge_mass_cap, "edge_mass_cap");
    positive(niceness_target, "niceness_target");
    positive(tolerance_scale, "tolerance_scale");
    exponent(phat_exp, "phat_exp");
    exponent(mass_dev_exp, "mass_dev_exp");
    exponent(vertex_dev_exp, "vertex_dev_exp");
    exponent(edge_dev_exp, "edge_dev_exp");
    exponent(entropy_dev_exp, "entropy_dev_exp");
    exponent(degree_dev_exp, "degree_dev_exp");
    exponent(saturation_exp, "saturation_exp");
    if (phat_floor < 0.0)
        throw InputError("nibble parameter phat_floor must be nonnegative");
}

std::size_t ReductState::num_alive() const
{
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
}

std::size_t ReductState::degree(VertexId v) const
{
    std::size_t d = 0;
    for (VertexId u : graph->neighbors(v))
        d += alive[u] ? 1 : 0;
    return d;
}

std::size_t ReductState::max_current_degree() const
{
    std::size_t best = 0;
    for (VertexId v = 0; v < graph->num_vertices(); ++v)
        if (alive[v])
            best = std::max(best, degree(v));
    return best;
}

std::size_t ReductState::list_size() const { return cover->uniform_list_size().value_or(0); }

ReductState make_state(std::shared_ptr<const Graph> g, std::shared_ptr<const Cover> c, Weighting w, double delta)
{
    if (!g || !c)
        throw InputError("state needs a graph and a cover");
    if (c->num_vertices() != g->num_vertices())
        throw InputError("cover and graph disagree on the vertex count");
    if (w.p.size() != c->num_colors()) {
        std::ostringstream msg;
        msg << "weighting has " << w.p.size() << " entries for " << c->num_colors() << " colors";
        throw InputError(msg.str());
    }
    if (!(w.p_hat > 0.0))
        throw InputError("p_hat must be positive");
    for (std::size_t x = 0; x < w.p.size(); ++x)
        if (!(w.p[x] >= 0.0 && w.p[x] <= w.p_hat)) {
            std::ostringstream msg;
            msg << "weight of color " << x << " is " << w.p[x] << ", outside [0, " << w.p_hat << "]";
            throw InputError(msg.str());
        }
    ReductState s;
    s.graph = std::move(g);
    s.cover = std::move(c);
    s.alive.assign(s.graph->num_vertices(), 1);
    s.weighting = std::move(w);
    s.delta = std::max(delta, 3.0);
    s.alpha = 1.0 / std::log(s.delta);
    return s;
}

NibbleScale nibble_scale(std::size_t max_degree, std::size_t k, const NibbleParams& params)
{
    NibbleScale scale;
    scale.delta = std::max(static_cast<double>(max_degree), 3.0);
    scale.k = k;
    scale.alpha = 1.0 / std::log(scale.delta);
    scale.p_hat = std::pow(scale.delta, -params.phat_exp);
    if (k > 0)
        scale.p_hat = std::max(scale.p_hat, params.phat_floor / static_cast<double>(k));
    return scale;
}

ReductState initial_state(std::shared_ptr<const Graph> g, std::shared_ptr<const Cover> c, const NibbleParams& params)
{
    auto k = c->uniform_list_size();
    if (!k || *k == 0)
        throw DomainError("the nibble needs lists of one common, positive size");
    NibbleScale scale = nibble_scale(max_degree(*g), *k, params);
    double uniform = 1.0 / static_cast<double>(*k);
    if (uniform > scale.p_hat) {
        std::ostringstream msg;
        msg << "uniform weight 1/k = " << uniform << " exceeds p_hat = " << scale.p_hat << "; lists are too short";
        throw DomainError(msg.str());
    }
    Weighting w;
    w.p_hat = scale.p_hat;
    w.p.assign(c->num_colors(), uniform);
    if (uniform == scale.p_hat)
        std::fill(w.p.begin(), w.p.end(), w.p_hat);
    return make_state(std::move(g), std::move(c), std::move(w), scale.delta);
}

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

template <typename Keep>
double pair_mass(const ReductState& s, VertexId u, VertexId v, Keep keep)
{
    if (!s.is_alive(u) || !s.is_alive(v))
        return 0.0;
    const auto& p = s.weighting.p;
    double sum = 0.0;
    for (ColorId x : s.cover->list(u)) {
        if (!keep(x))
            continue;
        for (ColorId y : s.cover->neighbors(x))
            if (s.cover->owner(y) == v && keep(y))
                sum += p[x] * p[y];
    }
    return sum;
}

}  // namespace

double vertex_mass(const ReductState& s, VertexId v)
{
    double sum = 0.0;
    for (ColorId x : s.cover->list(v))
        sum += s.weighting.p[x];
    return sum;
}

double edge_mass(const ReductState& s, VertexId u, VertexId v)
{
    return pair_mass(s, u, v, [](ColorId) { return true; });
}

double entropy(const ReductState& s, VertexId v)
{
    double sum = 0.0;
    for (ColorId x : s.cover->list(v))
        sum += plogp(s.weighting.p[x]);
    return sum;
}

double moderate_mass(const ReductState& s, VertexId v)
{
    double sum = 0.0;
    for (ColorId x : s.cover->list(v))
        if (s.weighting.moderate(x))
            sum += s.weighting.p[x];
    return sum;
}

double moderate_edge_mass(const ReductState& s, VertexId u, VertexId v)
{
    return pair_mass(s, u, v, [&](ColorId x) { return s.weighting.moderate(x); });
}

double moderate_edge_mass_sum(const ReductState& s, VertexId v)
{
    const auto& w = s.weighting;
    double sum = 0.0;
    for (ColorId x : s.cover->list(v)) {
        if (!w.moderate(x))
            continue;
        for (ColorId y : s.cover->neighbors(x)) {
            VertexId u = s.cover->owner(y);
            if (u != kNoVertex && u != v && s.is_alive(u) && w.moderate(y))
                sum += w.p[x] * w.p[y];
        }
    }
    return sum;
}

std::size_t capped_count(const ReductState& s, VertexId v)
{
    std::size_t n = 0;
    for (ColorId x : s.cover->list(v))
        n += s.weighting.capped(x) ? 1 : 0;
    return n;
}

NiceReport check_nice(const ReductState& s)
{
    NiceReport report;
    const auto& g = *s.graph;
    double a = std::numeric_limits<double>::infinity();
    double max_weight = 0.0;
    double max_edge_sum = 0.0;
    VertexId a_vertex = kNoVertex;
    VertexId b_vertex = kNoVertex;
    VertexId c_vertex = kNoVertex;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        double pm = moderate_mass(s, v);
        if (pm < a) {
            a = pm;
            a_vertex = v;
        }
        for (ColorId x : s.cover->list(v))
            if (s.weighting.moderate(x) && s.weighting.p[x] > max_weight) {
                max_weight = s.weighting.p[x];
                b_vertex = v;
            }
        double es = moderate_edge_mass_sum(s, v);
        if (es > max_edge_sum) {
            max_edge_sum = es;
            c_vertex = v;
        }
    }

    if (a_vertex == kNoVertex) {
        report.delta = 1.0;
        return report;
    }
    report.min_moderate_mass = a;
    report.weight_term = 2.0 * max_weight;
    report.edge_term = 2.0 * std::sqrt(max_edge_sum);

    if (!(a > 0.0)) {
        report.failure = "moderate mass is zero";
        report.failing_vertex = a_vertex;
    } else if (report.weight_term > a) {
        report.failure = "a moderate weight exceeds delta/2";
        report.failing_vertex = b_vertex;
    } else if (report.edge_term > a) {
        report.failure = "moderate edge mass exceeds delta^2/4";
        report.failing_vertex = c_vertex;
    } else {
        report.delta = a;
    }
    return report;
}

HypothesisReport check_reduct_hypotheses(const ReductState& s, const NibbleParams& params)
{
    HypothesisReport report;
    const auto& g = *s.graph;
    std::size_t k = s.list_size();
    double log_delta = std::log(s.delta);
    double mass_dev = std::pow(s.delta, -params.mass_dev_exp);
    double entropy_floor = k > 0 ? std::log(static_cast<double>(k)) - params.entropy_slack * log_delta : 0.0;
    double edge_cap = k > 0 ? params.edge_mass_cap / static_cast<double>(k) : 0.0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        if (std::abs(vertex_mass(s, v) - 1.0) > mass_dev)
            ++report.mass;
        if (k > 0 && entropy(s, v) < entropy_floor)
            ++report.entropy;
        for (ColorId x : s.cover->list(v)) {
            double px = s.weighting.p[x];
            if (k > 0 && px > 0.0 && px < 1.0 / static_cast<double>(k))
                ++report.support;
        }
    }
    if (k > 0)
        for (const auto& [u, v] : g.edges())
            if (s.is_alive(u) && s.is_alive(v) && edge_mass(s, u, v) > edge_cap)
                ++report.edge;
    return report;
}

std::vector<double> degree_expectation_bound(const ReductState& s, double p1, double p2, double P)
{
    const auto& g = *s.graph;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        double pm = moderate_mass(s, v);
        if (pm < p1 || pm > p2) {
            std::ostringstream msg;
            msg << "moderate mass " << pm << " at vertex " << v << " is outside [" << p1 << ", " << p2 << "]";
            throw DomainError(msg.str());
        }
    }
    for (const auto& [u, v] : g.edges())
        if (s.is_alive(u) && s.is_alive(v) && edge_mass(s, u, v) > P) {
            std::ostringstream msg;
            msg << "edge mass at " << u << "," << v << " exceeds " << P;
            throw DomainError(msg.str());
        }

    double factor = 1.0 - s.alpha * p1 + s.alpha * s.alpha * (p2 * p2 + P * s.delta);
    std::vector<double> bound(g.num_vertices(), 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (s.is_alive(v))
            bound[v] = static_cast<double>(s.degree(v)) * factor;
    return bound;
}

}  // namespace corrcolor

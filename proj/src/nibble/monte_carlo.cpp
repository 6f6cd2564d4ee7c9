#include <cmath>

#include "corrcolor/nibble.hpp"
#include "corrcolor/parallel.hpp"
#include "corrcolor/rng.hpp"

namespace corrcolor {

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x)
    {
        sum += x;
        sum_sq += x * x;
    }

    Moments finish(std::size_t n) const
    {
        Moments m;
        if (n == 0)
            return m;
        double nd = static_cast<double>(n);
        m.mean = sum / nd;
        if (n > 1) {
            double var = (sum_sq - nd * m.mean * m.mean) / (nd - 1.0);
            m.stderr_ = std::sqrt(std::max(0.0, var) / nd);
        }
        return m;
    }
};

}  // namespace

StepMoments sample_step_moments(const ReductState& s, std::size_t trials, std::uint64_t seed)
{
    const auto& g = *s.graph;
    std::vector<StepStats> samples(trials);
    parallel_for(trials, [&](std::size_t t) {
        samples[t] = reduct_step(s, derive_seed(seed, "step-moments", t)).stats;
    });

    StepMoments out;
    out.trials = trials;
    std::vector<Accumulator> pv(g.num_vertices()), qv(g.num_vertices()), dv(g.num_vertices());
    std::vector<Accumulator> pe;
    double saturated = 0.0;
    for (const auto& stats : samples) {
        for (VertexId v : stats.vertices) {
            pv[v].add(stats.p_vertex[v]);
            qv[v].add(stats.entropy[v]);
            dv[v].add(static_cast<double>(stats.degree[v]));
        }
        if (pe.empty()) {
            pe.resize(stats.edges.size());
            out.edges = stats.edges;
        }
        for (std::size_t i = 0; i < stats.edges.size(); ++i)
            pe[i].add(stats.p_edge[i]);
        saturated += static_cast<double>(stats.saturated);
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out.p_vertex.push_back(pv[v].finish(trials));
        out.entropy.push_back(qv[v].finish(trials));
        out.degree.push_back(dv[v].finish(trials));
    }
    for (const auto& acc : pe)
        out.p_edge.push_back(acc.finish(trials));
    if (trials > 0)
        out.mean_saturated = saturated / static_cast<double>(trials);
    return out;
}

}  // namespace corrcolor

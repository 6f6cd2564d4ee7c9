#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "corrcolor/nibble.hpp"
#include "corrcolor/rng.hpp"

namespace corrcolor {

FinalColorResult final_color(const ReductState& s, double delta, std::uint64_t seed, const NibbleParams& params)
{
    if (!(delta > 0.0))
        throw DomainError("final coloring needs a positive delta");
    const auto& g = *s.graph;
    const auto& c = *s.cover;
    const auto& w = s.weighting;

    std::vector<ColorId> candidates;
    for (ColorId x = 0; x < c.num_colors(); ++x) {
        if (!s.color_alive(x) || !w.moderate(x))
            continue;
        if (2.0 * w.p[x] / delta > 1.0) {
            std::ostringstream msg;
            msg << "inclusion probability 2p(x)/delta exceeds 1 at color " << x;
            throw DomainError(msg.str());
        }
        candidates.push_back(x);
    }

    FinalColorResult result;
    std::vector<char> in_m(c.num_colors(), 0);
    for (std::size_t attempt = 0; attempt < params.max_final_retries; ++attempt) {
        ++result.attempts;
        const std::uint64_t key = derive_seed(seed, "final-color", attempt);
        std::fill(in_m.begin(), in_m.end(), 0);
        for (ColorId x : candidates)
            in_m[x] = counter_uniform(key, x, 0) < 2.0 * w.p[x] / delta;

        // Every occurring forbidden pair {x, y} knocks out both of its colors.
        Coloring coloring(g.num_vertices(), kNoColor);
        bool complete = true;
        for (VertexId v = 0; v < g.num_vertices() && complete; ++v) {
            if (!s.is_alive(v))
                continue;
            for (ColorId x : c.list(v)) {
                if (!in_m[x])
                    continue;
                bool clashes = false;
                for (ColorId y : c.neighbors(x))
                    if (in_m[y] && s.color_alive(y)) {
                        clashes = true;
                        break;
                    }
                if (!clashes && (coloring[v] == kNoColor || x < coloring[v]))
                    coloring[v] = x;
            }
            complete = coloring[v] != kNoColor;
        }
        if (complete) {
            result.coloring = std::move(coloring);
            return result;
        }
    }
    return result;
}

Coloring extend_coloring(const Coloring& inner, const std::vector<ReductRecord>& history, const Graph& g,
                         const Cover& c)
{
    if (inner.size() != g.num_vertices())
        throw InputError("inner coloring size does not match the graph");
    Coloring out = inner;
    for (auto record = history.rbegin(); record != history.rend(); ++record) {
        for (std::size_t i = 0; i < record->removed.size(); ++i) {
            const auto& forced = record->forced_colors[i];
            if (forced.empty())
                throw std::logic_error("reduct record holds a removed vertex without forced colors");
            out[record->removed[i]] = *std::min_element(forced.begin(), forced.end());
        }
    }
    ColoringCheck check = is_valid_coloring(g, c, out);
    if (!check.valid)
        throw std::logic_error("extended coloring is invalid: " + check.violation);
    return out;
}

}  // namespace corrcolor

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrcolor/graph.hpp"

namespace corrcolor {

using ColorPair = std::pair<ColorId, ColorId>;

/// Matchings keyed by the graph edge (min, max). Within each pair the first
/// color belongs to the smaller vertex whenever that is possible.
using EdgeMatchings = std::map<Edge, std::vector<ColorPair>>;

/// A cover (L, H) of a graph: disjoint color lists L(v) plus, for each graph
/// edge, a matching between the two lists. H is the union of the matchings.
///
/// The constructor accepts any data (so that validate_cover can report on it);
/// only structural garbage such as a list index beyond num_vertices throws.
/// Color ids index into dense arrays of size num_colors() = max id + 1.
class Cover {
public:
    Cover() = default;
    Cover(std::size_t num_vertices, std::vector<std::vector<ColorId>> lists, EdgeMatchings matchings);

    std::size_t num_vertices() const { return lists_.size(); }
    std::size_t num_colors() const { return owner_.size(); }

    std::span<const ColorId> list(VertexId v) const { return lists_[v]; }
    const std::vector<std::vector<ColorId>>& lists() const { return lists_; }
    const EdgeMatchings& matchings() const { return matchings_; }

    /// Vertex whose list holds x (the first one, if lists overlap), or kNoVertex.
    VertexId owner(ColorId x) const { return x < owner_.size() ? owner_[x] : kNoVertex; }

    /// N_H(x), sorted.
    std::span<const ColorId> neighbors(ColorId x) const { return color_neighbors_[x]; }

    /// Common list size, if every list has the same size.
    std::optional<std::size_t> uniform_list_size() const;

    friend bool operator==(const Cover& a, const Cover& b)
    {
        return a.lists_ == b.lists_ && a.matchings_ == b.matchings_;
    }

private:
    std::vector<std::vector<ColorId>> lists_;
    EdgeMatchings matchings_;
    std::vector<VertexId> owner_;
    std::vector<std::vector<ColorId>> color_neighbors_;
};

struct CoverReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the cover conditions against g: disjoint lists, matched pairs only
/// along graph edges and between the right two lists, and each edge's pairs
/// forming a matching. Violations are returned, never thrown.
CoverReport validate_cover(const Graph& g, const Cover& c);

struct LiftedCover {
    Cover cover;
    std::vector<int> label_of;  ///< color id -> abstract label
};

/// The canonical cover of a list assignment: one color per (vertex, label),
/// and (u, c) ~ (v, c) across every edge uv whose lists share label c.
LiftedCover lift_from_lists(const Graph& g, const std::vector<std::vector<int>>& lists);

struct CoverMode {
    enum class Kind { perfect, bernoulli };
    Kind kind = Kind::perfect;
    double keep_probability = 1.0;

    static CoverMode perfect() { return {}; }
    static CoverMode bernoulli(double q) { return {Kind::bernoulli, q}; }
};

/// Fresh list of k colors per vertex (ids v*k .. v*k+k-1) and, per edge,
/// a uniformly random perfect matching. Bernoulli mode keeps each pair of that
/// matching independently with the given probability.
Cover random_cover(const Graph& g, std::size_t k, std::uint64_t seed, CoverMode mode = CoverMode::perfect());

/// Cover of C_m with 2-color lists: identity matchings on every edge except
/// {0, m-1}, which is crossed. Admits no coloring for even m.
Cover shifted_cycle_cover(std::size_t m);

/// Cover of g with k colors per vertex and the given permutation on each edge
/// (perm[e][i] = index in L(v) matched to index i in L(u), for edge e = (u, v)).
Cover permutation_cover(const Graph& g, std::size_t k, const std::vector<std::vector<std::size_t>>& perm);

}  // namespace corrcolor

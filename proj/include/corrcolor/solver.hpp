#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrcolor/cover.hpp"
#include "corrcolor/graph.hpp"

namespace corrcolor {

/// One chosen color per vertex; kNoColor marks a vertex outside the colored
/// part (used for induced subgraphs during the nibble).
using Coloring = std::vector<ColorId>;

/// Vertex mask selecting an induced subgraph; empty means "all vertices".
using VertexMask = std::vector<char>;

struct ColoringCheck {
    bool valid = false;
    std::string violation;  ///< first violation found, empty when valid
};

/// Membership (chosen(v) in L(v)) and independence in H, over the vertices
/// selected by `active`. Throws InputError if a chosen id belongs to no list.
ColoringCheck is_valid_coloring(const Graph& g, const Cover& c, const Coloring& coloring,
                                const VertexMask& active = {});

struct GreedyResult {
    std::optional<Coloring> coloring;
    VertexId stuck = kNoVertex;  ///< vertex with no color left, on failure
};

/// First-fit in the given vertex order. Always succeeds when every list has
/// at least deg(v) + 1 colors.
GreedyResult greedy_color(const Graph& g, const Cover& c, const std::vector<VertexId>& order);

struct SolveOptions {
    /// Per-vertex allowed colors; each set must lie inside L(v).
    std::optional<std::vector<std::vector<ColorId>>> restrict;
    /// Only these vertices are colored; the rest are ignored entirely.
    VertexMask active;
    std::uint64_t node_budget = 100'000'000;
};

struct SolveResult {
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
};

struct CountResult {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
};

/// Complete backtracking with forward checking and MRV vertex selection
/// (ties to the lowest vertex, colors tried in increasing id). Throws
/// BudgetExceeded when the node budget runs out.
SolveResult solve_exact(const Graph& g, const Cover& c, const SolveOptions& options = {});

/// Number of colorings (one color per vertex) by the same search, without
/// early exit.
CountResult count_colorings(const Graph& g, const Cover& c, const SolveOptions& options = {});

/// Plain list coloring on labels: adjacent vertices get different labels.
/// Independent of the cover machinery; used as a cross-check oracle.
std::optional<std::vector<int>> solve_lists(const Graph& g, const std::vector<std::vector<int>>& lists);

}  // namespace corrcolor

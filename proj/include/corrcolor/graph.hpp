#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "corrcolor/types.hpp"

namespace corrcolor {

using Edge = std::pair<VertexId, VertexId>;

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
///
/// Edges are stored with the smaller endpoint first, sorted lexicographically;
/// adjacency lists are sorted. Duplicate input edges collapse silently,
/// self-loops and out-of-range endpoints throw InputError.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return adjacency_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
    bool has_edge(VertexId u, VertexId v) const;

    /// Index of edge {u, v} in edges(), or num_edges() when absent.
    std::size_t edge_index(VertexId u, VertexId v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

/// 2|E|/|V|. Throws InputError on the empty graph.
double average_degree(const Graph& g);

std::size_t max_degree(const Graph& g);

bool is_triangle_free(const Graph& g);

Graph gen_empty(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_complete_bipartite(std::size_t a, std::size_t b);
Graph gen_complete(std::size_t n);
Graph gen_petersen();

struct RegularOptions {
    bool triangle_free = false;
    std::size_t max_attempts = 10'000;
};

/// Random d-regular simple graph by incremental pairing: stubs are matched one
/// pair at a time, never closing a loop, a repeated edge or (optionally) a
/// triangle; a dead end restarts the pairing. Throws DomainError when n*d is
/// odd or d >= n, and when max_attempts restarts are exhausted.
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         const RegularOptions& options = {});

/// Erdos-Renyi G(n, p).
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// Random triangle-free graph: candidate pairs are visited in random order and
/// each is kept with probability p unless it would close a triangle.
Graph gen_random_triangle_free(std::size_t n, double p, std::uint64_t seed);

}  // namespace corrcolor

#include "corrcolor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "corrcolor/rng.hpp"

namespace corrcolor {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : adjacency_(n)
{
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            std::ostringstream msg;
            msg << "edge (" << u << ", " << v << ") has an endpoint outside 0.." << (n == 0 ? 0 : n - 1);
            throw InputError(msg.str());
        }
        if (u == v) {
            std::ostringstream msg;
            msg << "self-loop at vertex " << u;
            throw InputError(msg.str());
        }
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end());
}

bool Graph::has_edge(VertexId u, VertexId v) const
{
    if (u >= num_vertices() || v >= num_vertices())
        return false;
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t Graph::edge_index(VertexId u, VertexId v) const
{
    if (u > v)
        std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v})
        return edges_.size();
    return static_cast<std::size_t>(it - edges_.begin());
}

double average_degree(const Graph& g)
{
    if (g.num_vertices() == 0)
        throw InputError("average degree of the empty graph is undefined");
    return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

std::size_t max_degree(const Graph& g)
{
    std::size_t best = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        best = std::max(best, g.degree(v));
    return best;
}

bool is_triangle_free(const Graph& g)
{
    // A triangle exists iff some edge's endpoints share a neighbor.
    for (const auto& [u, v] : g.edges()) {
        auto a = g.neighbors(u);
        auto b = g.neighbors(v);
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i < *j)
                ++i;
            else if (*j < *i)
                ++j;
            else
                return false;
        }
    }
    return true;
}

Graph gen_empty(std::size_t n) { return Graph(n, {}); }

Graph gen_cycle(std::size_t n)
{
    if (n < 3)
        throw DomainError("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
        edges.emplace_back(i, static_cast<VertexId>((i + 1) % n));
    return Graph(n, std::move(edges));
}

Graph gen_complete_bipartite(std::size_t a, std::size_t b)
{
    std::vector<Edge> edges;
    for (VertexId i = 0; i < a; ++i)
        for (VertexId j = 0; j < b; ++j)
            edges.emplace_back(i, static_cast<VertexId>(a + j));
    return Graph(a + b, std::move(edges));
}

Graph gen_complete(std::size_t n)
{
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph gen_petersen()
{
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(i, i + 5);                // spokes
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return Graph(10, std::move(edges));
}

namespace {

bool share_neighbor(const std::vector<std::vector<VertexId>>& adj, VertexId u, VertexId v)
{
    const auto& small = adj[u].size() < adj[v].size() ? adj[u] : adj[v];
    const auto& large = adj[u].size() < adj[v].size() ? adj[v] : adj[u];
    for (VertexId w : small)
        if (std::find(large.begin(), large.end(), w) != large.end())
            return true;
    return false;
}

bool adjacent(const std::vector<std::vector<VertexId>>& adj, VertexId u, VertexId v)
{
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

// One pairing attempt. Returns false on a dead end.
bool try_pairing(std::size_t n, std::size_t d, bool triangle_free, Engine& rng,
                 std::vector<Edge>& edges)
{
    std::vector<std::vector<VertexId>> adj(n);
    std::vector<VertexId> stubs;
    stubs.reserve(n * d);
    for (VertexId v = 0; v < n; ++v)
        for (std::size_t i = 0; i < d; ++i)
            stubs.push_back(v);

    edges.clear();
    auto allowed = [&](VertexId u, VertexId v) {
        return u != v && !adjacent(adj, u, v) && !(triangle_free && share_neighbor(adj, u, v));
    };

    while (!stubs.empty()) {
        // Random probes first; fall back to a full scan before declaring a dead end.
        bool placed = false;
        std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
        for (int probe = 0; probe < 64 && !placed; ++probe) {
            std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            if (i == j || !allowed(stubs[i], stubs[j]))
                continue;
            VertexId u = stubs[i], v = stubs[j];
            if (i < j)
                std::swap(i, j);
            stubs[i] = stubs.back();
            stubs.pop_back();
            stubs[j] = stubs.back();
            stubs.pop_back();
            adj[u].push_back(v);
            adj[v].push_back(u);
            edges.emplace_back(u, v);
            placed = true;
        }
        if (placed)
            continue;

        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t i = 0; i < stubs.size(); ++i)
            for (std::size_t j = i + 1; j < stubs.size(); ++j)
                if (allowed(stubs[i], stubs[j]))
                    options.emplace_back(i, j);
        if (options.empty())
            return false;
        auto [j, i] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        VertexId u = stubs[i], v = stubs[j];
        stubs[i] = stubs.back();
        stubs.pop_back();
        stubs[j] = stubs.back();
        stubs.pop_back();
        adj[u].push_back(v);
        adj[v].push_back(u);
        edges.emplace_back(u, v);
    }
    return true;
}

}  // namespace

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, const RegularOptions& options)
{
    if ((n * d) % 2 != 0)
        throw DomainError("n*d must be even for a d-regular graph");
    if (d >= n && !(d == 0 && n == 0))
        throw DomainError("degree must be smaller than the vertex count");

    Engine rng = make_engine(derive_seed(seed, "random-regular"));
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
        if (try_pairing(n, d, options.triangle_free, rng, edges))
            return Graph(n, std::move(edges));
    }
    std::ostringstream msg;
    msg << "no " << d << "-regular" << (options.triangle_free ? " triangle-free" : "")
        << " graph on " << n << " vertices after " << options.max_attempts << " attempts";
    throw DomainError(msg.str());
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed)
{
    Engine rng = make_engine(derive_seed(seed, "gnp"));
    std::bernoulli_distribution keep(p);
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            if (keep(rng))
                edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph gen_random_triangle_free(std::size_t n, double p, std::uint64_t seed)
{
    Engine rng = make_engine(derive_seed(seed, "triangle-free"));
    std::vector<Edge> candidates;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            candidates.emplace_back(i, j);
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::bernoulli_distribution keep(p);
    std::vector<std::vector<VertexId>> adj(n);
    std::vector<Edge> edges;
    for (const auto& [u, v] : candidates) {
        if (!keep(rng) || share_neighbor(adj, u, v))
            continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
        edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

}  // namespace corrcolor

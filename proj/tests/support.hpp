#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "corrcolor/cover.hpp"
#include "corrcolor/graph.hpp"
#include "corrcolor/nibble.hpp"
#include "corrcolor/rng.hpp"
#include "corrcolor/solver.hpp"

namespace corrcolor::testing {

// Whether the transversal `choice` avoids every matched pair, read straight
// from the matching map (no derived adjacency).
inline bool transversal_independent(const Cover& c, const std::vector<ColorId>& choice)
{
    for (const auto& [edge, pairs] : c.matchings())
        for (const auto& [x, y] : pairs) {
            const ColorId a = choice[edge.first];
            const ColorId b = choice[edge.second];
            if ((a == x && b == y) || (a == y && b == x))
                return false;
        }
    return true;
}

// Odometer over all transversals.
inline std::uint64_t brute_force_count(const Cover& c)
{
    const std::size_t n = c.num_vertices();
    if (n == 0)
        return 1;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (c.list(v).empty())
            return 0;
    std::vector<ColorId> choice(n);
    std::uint64_t count = 0;
    while (true) {
        for (std::size_t v = 0; v < n; ++v)
            choice[v] = c.list(static_cast<VertexId>(v))[idx[v]];
        count += transversal_independent(c, choice) ? 1 : 0;
        std::size_t v = 0;
        while (v < n && ++idx[v] == c.list(static_cast<VertexId>(v)).size())
            idx[v++] = 0;
        if (v == n)
            return count;
    }
}

inline Graph path_graph(std::size_t n)
{
    std::vector<Edge> edges;
    for (VertexId v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

inline Graph star_graph(std::size_t leaves)
{
    std::vector<Edge> edges;
    for (VertexId v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return Graph(leaves + 1, edges);
}

inline ReductState state_with(const Graph& g, const Cover& c, std::vector<double> p, double p_hat, double delta)
{
    Weighting w;
    w.p = std::move(p);
    w.p_hat = p_hat;
    return make_state(std::make_shared<const Graph>(g), std::make_shared<const Cover>(c), std::move(w), delta);
}

inline ReductState uniform_state(const Graph& g, const Cover& c, std::size_t k, double p_hat)
{
    return state_with(g, c, std::vector<double>(c.num_colors(), 1.0 / static_cast<double>(k)), p_hat,
                      static_cast<double>(max_degree(g)));
}

// Petersen graph, k = 5, p_hat = 0.3; weights drawn from {0, p_hat, 1/k}.
inline constexpr std::size_t kToyK = 5;
inline constexpr double kToyPhat = 0.3;

inline ReductState toy_state(std::uint64_t seed)
{
    Graph g = gen_petersen();
    Cover c = random_cover(g, kToyK, derive_seed(seed, "toy-cover"));
    Engine rng = make_engine(derive_seed(seed, "toy-weights"));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(c.num_colors());
    for (double& x : p) {
        double r = u(rng);
        x = r < 0.15 ? 0.0 : (r < 0.35 ? kToyPhat : 1.0 / static_cast<double>(kToyK));
    }
    return state_with(g, c, std::move(p), kToyPhat, 3.0);
}

// Toy state with arbitrary weights in [0, p_hat], used for closed-form checks.
inline ReductState random_weight_state(std::uint64_t seed)
{
    Engine rng = make_engine(derive_seed(seed, "random-state"));
    std::uniform_int_distribution<std::size_t> size(5, 10);
    Graph g = gen_random_triangle_free(size(rng), 0.4, derive_seed(seed, "graph"));
    std::uniform_int_distribution<std::size_t> kk(2, 5);
    std::size_t k = kk(rng);
    Cover c = random_cover(g, k, derive_seed(seed, "cover"));
    const double p_hat = 0.35;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(c.num_colors());
    for (double& x : p) {
        double r = u(rng);
        x = r < 0.1 ? 0.0 : (r < 0.25 ? p_hat : p_hat * u(rng));
    }
    return state_with(g, c, std::move(p), p_hat, std::max<double>(static_cast<double>(max_degree(g)), 3.0));
}

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("corrcolor-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace corrcolor::testing

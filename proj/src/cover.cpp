#include "corrcolor/cover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "corrcolor/rng.hpp"

namespace corrcolor {

Cover::Cover(std::size_t num_vertices, std::vector<std::vector<ColorId>> lists, EdgeMatchings matchings)
    : lists_(std::move(lists))
{
    if (lists_.size() != num_vertices) {
        std::ostringstream msg;
        msg << "cover has " << lists_.size() << " lists for " << num_vertices << " vertices";
        throw InputError(msg.str());
    }

    std::size_t num_colors = 0;
    auto see = [&](ColorId x) {
        if (x == kNoColor)
            throw InputError("color id out of range");
        num_colors = std::max<std::size_t>(num_colors, std::size_t{x} + 1);
    };
    for (const auto& list : lists_)
        for (ColorId x : list)
            see(x);
    for (const auto& [edge, pairs] : matchings)
        for (const auto& [x, y] : pairs) {
            see(x);
            see(y);
        }

    owner_.assign(num_colors, kNoVertex);
    for (VertexId v = 0; v < lists_.size(); ++v)
        for (ColorId x : lists_[v])
            if (owner_[x] == kNoVertex)
                owner_[x] = v;

    for (auto& [edge, pairs] : matchings) {
        auto [u, v] = edge;
        if (u > v)
            std::swap(u, v);
        for (auto& [x, y] : pairs)
            if (owner_[x] != u && owner_[y] == u)
                std::swap(x, y);
        auto& slot = matchings_[{u, v}];
        slot.insert(slot.end(), pairs.begin(), pairs.end());
    }

    color_neighbors_.assign(num_colors, {});
    for (const auto& [edge, pairs] : matchings_)
        for (const auto& [x, y] : pairs) {
            if (x == y)
                continue;
            color_neighbors_[x].push_back(y);
            color_neighbors_[y].push_back(x);
        }
    for (auto& nb : color_neighbors_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

std::optional<std::size_t> Cover::uniform_list_size() const
{
    if (lists_.empty())
        return std::nullopt;
    std::size_t k = lists_.front().size();
    for (const auto& list : lists_)
        if (list.size() != k)
            return std::nullopt;
    return k;
}

CoverReport validate_cover(const Graph& g, const Cover& c)
{
    CoverReport report;
    auto flag = [&](const std::string& s) { report.violations.push_back(s); };

    if (c.num_vertices() != g.num_vertices()) {
        std::ostringstream msg;
        msg << "cover has " << c.num_vertices() << " lists but the graph has " << g.num_vertices() << " vertices";
        flag(msg.str());
        return report;
    }

    std::vector<VertexId> seen(c.num_colors(), kNoVertex);
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        for (ColorId x : c.list(v)) {
            if (seen[x] != kNoVertex) {
                std::ostringstream msg;
                msg << "lists not disjoint: color " << x << " is in L(" << seen[x] << ") and L(" << v << ")";
                flag(msg.str());
            }
            seen[x] = v;
        }
    }

    for (const auto& [edge, pairs] : c.matchings()) {
        const auto [u, v] = edge;
        std::ostringstream where;
        where << "edge " << u << "," << v;
        if (!g.has_edge(u, v)) {
            if (!pairs.empty())
                flag("condition 1 violated: matched colors on " + where.str() + ", which is not an edge of G");
            continue;
        }
        std::set<ColorId> used;
        for (const auto& [x, y] : pairs) {
            if (c.owner(x) != u || c.owner(y) != v) {
                std::ostringstream msg;
                msg << "pair (" << x << ", " << y << ") on " << where.str() << " does not join L(" << u << ") and L(" << v << ")";
                flag(msg.str());
            }
            if (!used.insert(x).second || !used.insert(y).second) {
                std::ostringstream msg;
                msg << "matching condition violated on " << where.str() << ": a color appears in two pairs";
                flag(msg.str());
            }
        }
    }
    return report;
}

LiftedCover lift_from_lists(const Graph& g, const std::vector<std::vector<int>>& lists)
{
    if (lists.size() != g.num_vertices())
        throw InputError("list assignment size does not match the graph");

    LiftedCover out;
    std::vector<std::vector<ColorId>> color_lists(lists.size());
    std::vector<std::map<int, ColorId>> by_label(lists.size());
    for (VertexId v = 0; v < lists.size(); ++v) {
        std::vector<int> labels = lists[v];
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        for (int label : labels) {
            auto id = static_cast<ColorId>(out.label_of.size());
            out.label_of.push_back(label);
            color_lists[v].push_back(id);
            by_label[v][label] = id;
        }
    }

    EdgeMatchings matchings;
    for (const auto& [u, v] : g.edges()) {
        auto& pairs = matchings[{u, v}];
        for (const auto& [label, x] : by_label[u]) {
            auto it = by_label[v].find(label);
            if (it != by_label[v].end())
                pairs.emplace_back(x, it->second);
        }
    }
    out.cover = Cover(g.num_vertices(), std::move(color_lists), std::move(matchings));
    return out;
}

namespace {

std::vector<std::vector<ColorId>> block_lists(std::size_t n, std::size_t k)
{
    std::vector<std::vector<ColorId>> lists(n);
    for (VertexId v = 0; v < n; ++v)
        for (std::size_t i = 0; i < k; ++i)
            lists[v].push_back(static_cast<ColorId>(v * k + i));
    return lists;
}

}  // namespace

Cover random_cover(const Graph& g, std::size_t k, std::uint64_t seed, CoverMode mode)
{
    if (k == 0)
        throw DomainError("list size k must be at least 1");

    Engine rng = make_engine(derive_seed(seed, "cover"));
    std::bernoulli_distribution keep(mode.kind == CoverMode::Kind::bernoulli ? mode.keep_probability : 1.0);
    std::vector<std::size_t> perm(k);

    EdgeMatchings matchings;
    for (const auto& [u, v] : g.edges()) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        auto& pairs = matchings[{u, v}];
        for (std::size_t i = 0; i < k; ++i) {
            if (mode.kind == CoverMode::Kind::bernoulli && !keep(rng))
                continue;
            pairs.emplace_back(static_cast<ColorId>(u * k + i), static_cast<ColorId>(v * k + perm[i]));
        }
    }
    return Cover(g.num_vertices(), block_lists(g.num_vertices(), k), std::move(matchings));
}

Cover permutation_cover(const Graph& g, std::size_t k, const std::vector<std::vector<std::size_t>>& perm)
{
    if (perm.size() != g.num_edges())
        throw InputError("need one permutation per edge");
    EdgeMatchings matchings;
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        if (perm[e].size() != k)
            throw InputError("permutation length must equal k");
        auto& pairs = matchings[{u, v}];
        for (std::size_t i = 0; i < k; ++i)
            pairs.emplace_back(static_cast<ColorId>(u * k + i), static_cast<ColorId>(v * k + perm[e][i]));
    }
    return Cover(g.num_vertices(), block_lists(g.num_vertices(), k), std::move(matchings));
}

Cover shifted_cycle_cover(std::size_t m)
{
    if (m < 4 || m % 2 != 0)
        throw DomainError("shifted cycle cover needs an even cycle length m >= 4");
    Graph g = gen_cycle(m);
    std::vector<std::vector<std::size_t>> perm;
    for (const auto& [u, v] : g.edges()) {
        bool crossed = (u == 0 && v == m - 1);
        perm.push_back(crossed ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1});
    }
    return permutation_cover(g, 2, perm);
}

}  // namespace corrcolor

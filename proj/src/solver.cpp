#include "corrcolor/solver.hpp"

#include <algorithm>
#include <sstream>

namespace corrcolor {

namespace {

bool is_active(const VertexMask& mask, VertexId v) { return mask.empty() || mask[v]; }

}  // namespace

ColoringCheck is_valid_coloring(const Graph& g, const Cover& c, const Coloring& coloring, const VertexMask& active)
{
    if (coloring.size() != g.num_vertices())
        throw InputError("coloring size does not match the graph");

    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!is_active(active, v))
            continue;
        ColorId x = coloring[v];
        std::ostringstream msg;
        if (x == kNoColor) {
            msg << "vertex " << v << " has no color";
            return {false, msg.str()};
        }
        if (c.owner(x) == kNoVertex) {
            msg << "color " << x << " chosen at vertex " << v << " is not in any list";
            throw InputError(msg.str());
        }
        if (c.owner(x) != v) {
            msg << "color " << x << " chosen at vertex " << v << " is not in L(" << v << ")";
            return {false, msg.str()};
        }
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!is_active(active, v))
            continue;
        ColorId x = coloring[v];
        for (ColorId y : c.neighbors(x)) {
            VertexId u = c.owner(y);
            if (u != kNoVertex && u != v && is_active(active, u) && coloring[u] == y) {
                std::ostringstream msg;
                msg << "colors " << x << " (vertex " << v << ") and " << y << " (vertex " << u << ") are matched in H";
                return {false, msg.str()};
            }
        }
    }
    return {true, {}};
}

GreedyResult greedy_color(const Graph& g, const Cover& c, const std::vector<VertexId>& order)
{
    std::vector<char> blocked(c.num_colors(), 0);
    Coloring coloring(g.num_vertices(), kNoColor);
    for (VertexId v : order) {
        ColorId pick = kNoColor;
        for (ColorId x : c.list(v))
            if (!blocked[x]) {
                pick = x;
                break;
            }
        if (pick == kNoColor)
            return {std::nullopt, v};
        coloring[v] = pick;
        for (ColorId y : c.neighbors(pick))
            blocked[y] = 1;
    }
    return {std::move(coloring), kNoVertex};
}

namespace {

// Forward-checking search shared by solve_exact and count_colorings.
class Search {
public:
    Search(const Graph& g, const Cover& c, const SolveOptions& options)
        : g_(g), c_(c), budget_(options.node_budget),
          domain_(g.num_vertices()), available_(g.num_vertices(), 0),
          banned_(c.num_colors(), 0), in_domain_(c.num_colors(), 0),
          assignment_(g.num_vertices(), kNoColor), active_(g.num_vertices(), 1)
    {
        if (c.num_vertices() != g.num_vertices())
            throw InputError("cover and graph disagree on the vertex count");
        if (!options.active.empty()) {
            if (options.active.size() != g.num_vertices())
                throw InputError("active mask size does not match the graph");
            for (VertexId v = 0; v < g.num_vertices(); ++v)
                active_[v] = options.active[v] ? 1 : 0;
        }
        if (options.restrict && options.restrict->size() != g.num_vertices())
            throw InputError("restriction size does not match the graph");

        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (!active_[v])
                continue;
            ++unassigned_;
            std::vector<ColorId> allowed(c.list(v).begin(), c.list(v).end());
            if (options.restrict) {
                const auto& r = (*options.restrict)[v];
                for (ColorId x : r)
                    if (c.owner(x) != v) {
                        std::ostringstream msg;
                        msg << "restricted color " << x << " is not in L(" << v << ")";
                        throw InputError(msg.str());
                    }
                std::erase_if(allowed, [&](ColorId x) { return std::find(r.begin(), r.end(), x) == r.end(); });
            }
            std::sort(allowed.begin(), allowed.end());
            allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
            for (ColorId x : allowed)
                in_domain_[x] = 1;
            available_[v] = allowed.size();
            domain_[v] = std::move(allowed);
        }
    }

    // Returns true as soon as a solution is found unless counting.
    bool run(bool counting)
    {
        counting_ = counting;
        return expand();
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t count() const { return count_; }
    const Coloring& solution() const { return solution_; }

private:
    bool expand()
    {
        if (unassigned_ == 0) {
            ++count_;
            if (solution_.empty())
                solution_ = assignment_;
            return !counting_;
        }

        VertexId best = kNoVertex;
        for (VertexId v = 0; v < g_.num_vertices(); ++v)
            if (active_[v] && assignment_[v] == kNoColor && (best == kNoVertex || available_[v] < available_[best]))
                best = v;
        if (available_[best] == 0)
            return false;

        --unassigned_;
        for (ColorId x : domain_[best]) {
            if (banned_[x])
                continue;
            if (++nodes_ > budget_) {
                std::ostringstream msg;
                msg << "search exceeded its budget of " << budget_ << " nodes";
                throw BudgetExceeded(msg.str());
            }
            assignment_[best] = x;

            std::size_t mark = trail_.size();
            bool wiped = false;
            for (ColorId y : c_.neighbors(x)) {
                VertexId u = c_.owner(y);
                if (u == kNoVertex || u == best || !active_[u] || assignment_[u] != kNoColor || !in_domain_[y])
                    continue;
                trail_.push_back(y);
                if (banned_[y]++ == 0 && --available_[u] == 0)
                    wiped = true;
            }

            if (!wiped && expand())
                return true;

            while (trail_.size() > mark) {
                ColorId y = trail_.back();
                trail_.pop_back();
                if (--banned_[y] == 0)
                    ++available_[c_.owner(y)];
            }
            assignment_[best] = kNoColor;
        }
        ++unassigned_;
        return false;
    }

    const Graph& g_;
    const Cover& c_;
    std::uint64_t budget_;
    std::vector<std::vector<ColorId>> domain_;
    std::vector<std::size_t> available_;
    std::vector<std::uint32_t> banned_;
    std::vector<char> in_domain_;
    Coloring assignment_;
    std::vector<char> active_;
    std::vector<ColorId> trail_;
    std::size_t unassigned_ = 0;
    bool counting_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t count_ = 0;
    Coloring solution_;
};

}  // namespace

SolveResult solve_exact(const Graph& g, const Cover& c, const SolveOptions& options)
{
    Search search(g, c, options);
    SolveResult result;
    if (search.run(false))
        result.coloring = search.solution();
    result.nodes = search.nodes();
    return result;
}

CountResult count_colorings(const Graph& g, const Cover& c, const SolveOptions& options)
{
    Search search(g, c, options);
    search.run(true);
    return {search.count(), search.nodes()};
}

namespace {

bool extend_lists(const Graph& g, const std::vector<std::vector<int>>& lists, std::vector<int>& labels,
                  std::vector<char>& done, std::size_t placed)
{
    if (placed == g.num_vertices())
        return true;
    VertexId v = 0;
    while (done[v])
        ++v;
    done[v] = 1;
    for (int label : lists[v]) {
        bool clash = false;
        for (VertexId u : g.neighbors(v))
            if (done[u] && u != v && labels[u] == label) {
                clash = true;
                break;
            }
        if (clash)
            continue;
        labels[v] = label;
        if (extend_lists(g, lists, labels, done, placed + 1))
            return true;
    }
    done[v] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<int>> solve_lists(const Graph& g, const std::vector<std::vector<int>>& lists)
{
    if (lists.size() != g.num_vertices())
        throw InputError("list assignment size does not match the graph");
    std::vector<int> labels(g.num_vertices(), 0);
    std::vector<char> done(g.num_vertices(), 0);
    if (extend_lists(g, lists, labels, done, 0))
        return labels;
    return std::nullopt;
}

}  // namespace corrcolor

#include "corrcolor/io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace corrcolor::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

std::string edge_key(VertexId u, VertexId v) { return std::to_string(u) + "," + std::to_string(v); }

Edge parse_edge_key(const std::string& key)
{
    auto comma = key.find(',');
    if (comma == std::string::npos)
        throw InputError("matching key '" + key + "' is not of the form \"u,v\"");
    try {
        std::size_t used_u = 0, used_v = 0;
        unsigned long u = std::stoul(key.substr(0, comma), &used_u);
        unsigned long v = std::stoul(key.substr(comma + 1), &used_v);
        if (used_u != comma || used_v != key.size() - comma - 1)
            throw InputError("matching key '" + key + "' is not of the form \"u,v\"");
        return {static_cast<VertexId>(u), static_cast<VertexId>(v)};
    } catch (const std::logic_error&) {
        throw InputError("matching key '" + key + "' is not of the form \"u,v\"");
    }
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json graph_to_json(const Graph& g)
{
    json edges = json::array();
    for (const auto& [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"n", g.num_vertices()}, {"edges", edges}};
}

Graph graph_from_json(const json& j)
{
    return guarded("graph document", [&] {
        auto n = j.at("n").get<std::int64_t>();
        if (n < 0)
            throw InputError("graph document: n must be nonnegative");
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InputError("graph document: each edge must be a pair [u, v]");
            auto u = e[0].get<std::int64_t>();
            auto v = e[1].get<std::int64_t>();
            if (u < 0 || v < 0 || u >= n || v >= n) {
                std::ostringstream msg;
                msg << "graph document: edge [" << u << ", " << v << "] has an endpoint outside 0.." << n - 1;
                throw InputError(msg.str());
            }
            edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        }
        return Graph(static_cast<std::size_t>(n), std::move(edges));
    });
}

Graph read_dimacs(std::istream& in)
{
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string format;
            std::size_t m = 0;
            if (!(fields >> format >> n >> m))
                throw InputError("DIMACS line " + std::to_string(line_no) + ": malformed 'p' header");
            have_header = true;
        } else if (tag == "e") {
            if (!have_header)
                throw InputError("DIMACS line " + std::to_string(line_no) + ": edge before the 'p' header");
            long long u = 0, v = 0;
            if (!(fields >> u >> v))
                throw InputError("DIMACS line " + std::to_string(line_no) + ": malformed edge");
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n)
                throw InputError("DIMACS line " + std::to_string(line_no) + ": vertex out of range 1.." + std::to_string(n));
            edges.emplace_back(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
        } else {
            throw InputError("DIMACS line " + std::to_string(line_no) + ": unknown line type '" + tag + "'");
        }
    }
    if (!have_header)
        throw InputError("DIMACS input has no 'p' header");
    return Graph(n, std::move(edges));
}

json cover_to_json(const Cover& c)
{
    json sizes = json::array();
    json lists = json::array();
    for (const auto& list : c.lists()) {
        sizes.push_back(list.size());
        lists.push_back(list);
    }
    json matchings = json::object();
    for (const auto& [edge, pairs] : c.matchings()) {
        json arr = json::array();
        for (const auto& [x, y] : pairs)
            arr.push_back({x, y});
        matchings[edge_key(edge.first, edge.second)] = arr;
    }
    return {{"k_per_vertex", sizes}, {"lists", lists}, {"matchings", matchings}};
}

Cover cover_from_json(const json& j)
{
    return guarded("cover document", [&] {
        auto lists = j.at("lists").get<std::vector<std::vector<std::int64_t>>>();
        std::vector<std::vector<ColorId>> ids(lists.size());
        for (std::size_t v = 0; v < lists.size(); ++v)
            for (auto x : lists[v]) {
                if (x < 0 || x >= static_cast<std::int64_t>(kNoColor))
                    throw InputError("cover document: color id " + std::to_string(x) + " out of range");
                ids[v].push_back(static_cast<ColorId>(x));
            }
        if (j.contains("k_per_vertex")) {
            auto sizes = j.at("k_per_vertex").get<std::vector<std::size_t>>();
            if (sizes.size() != ids.size())
                throw InputError("cover document: k_per_vertex and lists differ in length");
            for (std::size_t v = 0; v < ids.size(); ++v)
                if (sizes[v] != ids[v].size())
                    throw InputError("cover document: k_per_vertex[" + std::to_string(v) + "] disagrees with its list");
        }
        EdgeMatchings matchings;
        if (j.contains("matchings")) {
            for (const auto& [key, pairs] : j.at("matchings").items()) {
                Edge e = parse_edge_key(key);
                auto& slot = matchings[e.first < e.second ? e : Edge{e.second, e.first}];
                for (const auto& pair : pairs) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw InputError("cover document: matching entries must be pairs [x, y]");
                    auto x = pair[0].get<std::int64_t>();
                    auto y = pair[1].get<std::int64_t>();
                    if (x < 0 || y < 0 || x >= static_cast<std::int64_t>(kNoColor) || y >= static_cast<std::int64_t>(kNoColor))
                        throw InputError("cover document: matched color id out of range");
                    slot.emplace_back(static_cast<ColorId>(x), static_cast<ColorId>(y));
                }
            }
        }
        const std::size_t n = ids.size();
        return Cover(n, std::move(ids), std::move(matchings));
    });
}

json weighting_to_json(const Weighting& w) { return {{"p_hat", w.p_hat}, {"p", w.p}}; }

Weighting weighting_from_json(const json& j)
{
    return guarded("weights document", [&] {
        Weighting w;
        w.p_hat = j.at("p_hat").get<double>();
        w.p = j.at("p").get<std::vector<double>>();
        // Reconnect weights equal to p_hat with the stored cap value.
        for (double& x : w.p)
            if (x == w.p_hat)
                x = w.p_hat;
        return w;
    });
}

json coloring_to_json(const Coloring& c)
{
    json arr = json::array();
    for (ColorId x : c)
        arr.push_back(x == kNoColor ? json(nullptr) : json(x));
    return arr;
}

Coloring coloring_from_json(const json& j)
{
    return guarded("coloring", [&] {
        Coloring c;
        for (const auto& x : j) {
            if (x.is_null()) {
                c.push_back(kNoColor);
                continue;
            }
            auto id = x.get<std::int64_t>();
            if (id < 0 || id >= static_cast<std::int64_t>(kNoColor))
                throw InputError("coloring: color id out of range");
            c.push_back(static_cast<ColorId>(id));
        }
        return c;
    });
}

std::vector<std::vector<int>> label_lists_from_json(const json& j)
{
    return guarded("lists document", [&] { return j.at("lists").get<std::vector<std::vector<int>>>(); });
}

json label_lists_to_json(const std::vector<std::vector<int>>& lists) { return {{"lists", lists}}; }

std::vector<std::vector<ColorId>> restrict_from_json(const json& j)
{
    return guarded("restrict document", [&] {
        auto raw = j.at("restrict").get<std::vector<std::vector<std::int64_t>>>();
        std::vector<std::vector<ColorId>> out(raw.size());
        for (std::size_t v = 0; v < raw.size(); ++v)
            for (auto x : raw[v]) {
                if (x < 0 || x >= static_cast<std::int64_t>(kNoColor))
                    throw InputError("restrict document: color id out of range");
                out[v].push_back(static_cast<ColorId>(x));
            }
        return out;
    });
}

json report_to_json(const LowerBoundReport& r)
{
    json j;
    j["graph"] = {{"n", r.n}, {"m", r.m}, {"d", r.d}};
    j["k"] = r.k;
    j["alon_bound"] = r.alon_bound ? json(*r.alon_bound) : json(nullptr);
    j["first_moment_bound"] = r.first_moment.value;
    j["first_moment_below_one"] = r.first_moment.below_one;
    j["expected_colorings_exact"] = r.expected_colorings_exact;
    j["mode"] = r.mode;
    j["trials"] = r.trials;
    j["colorable_count"] = r.colorable_count;
    j["failed_trials"] = r.failed_trials;
    j["mean_colorings_empirical"] = r.mean_colorings_empirical;
    j["mean_colorings_stderr"] = r.mean_colorings_stderr;
    j["seed"] = r.seed;
    j["witness_trial"] = r.witness_trial ? json(*r.witness_trial) : json(nullptr);
    return j;
}

std::string per_trial_csv(const LowerBoundReport& r)
{
    std::ostringstream out;
    out << "trial,count\n";
    for (std::size_t t = 0; t < r.per_trial_counts.size(); ++t)
        out << t << ',' << r.per_trial_counts[t] << '\n';
    return out.str();
}

json trajectory_to_json(const std::vector<TrajectoryRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({
            {"step", r.step},
            {"min_pv", r.min_pv},
            {"max_pv", r.max_pv},
            {"min_Q", r.min_q},
            {"max_deg", r.max_deg},
            {"removed", r.removed},
            {"retries", r.retries},
            {"alive", r.alive},
            {"saturated", r.saturated},
            {"hypothesis_violations",
             {{"mass", r.hypotheses.mass},
              {"edge", r.hypotheses.edge},
              {"entropy", r.hypotheses.entropy},
              {"support", r.hypotheses.support}}},
        });
    }
    return arr;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows)
{
    std::ostringstream out;
    out.precision(17);
    out << "step,min_pv,max_pv,min_Q,max_deg,removed,retries\n";
    for (const auto& r : rows)
        out << r.step << ',' << r.min_pv << ',' << r.max_pv << ',' << r.min_q << ',' << r.max_deg << ','
            << r.removed << ',' << r.retries << '\n';
    return out.str();
}

json params_to_json(const NibbleParams& p)
{
    return {
        {"ck", p.ck},
        {"phat_exp", p.phat_exp},
        {"entropy_slack", p.entropy_slack},
        {"mass_dev_exp", p.mass_dev_exp},
        {"vertex_dev_exp", p.vertex_dev_exp},
        {"edge_dev_exp", p.edge_dev_exp},
        {"entropy_dev_exp", p.entropy_dev_exp},
        {"entropy_loss_coeff", p.entropy_loss_coeff},
        {"degree_dev_exp", p.degree_dev_exp},
        {"shrink_coeff", p.shrink_coeff},
        {"saturation_exp", p.saturation_exp},
        {"edge_mass_cap", p.edge_mass_cap},
        {"niceness_target", p.niceness_target},
        {"tolerance_scale", p.tolerance_scale},
        {"phat_floor", p.phat_floor},
        {"schedule", p.schedule == ScheduleMode::fixed_istar ? "fixed_istar" : "until_nice"},
        {"max_steps", p.max_steps},
        {"max_retries_per_step", p.max_retries_per_step},
        {"max_final_retries", p.max_final_retries},
        {"exact_fallback", p.exact_fallback},
        {"fallback_node_budget", p.fallback_node_budget},
    };
}

json nibble_outcome_to_json(const NibbleOutcome& o)
{
    json j;
    j["status"] = to_string(o.status);
    j["message"] = o.message;
    j["coloring"] = o.coloring ? coloring_to_json(*o.coloring) : json(nullptr);
    j["scale"] = {{"delta", o.scale.delta}, {"k", o.scale.k}, {"alpha", o.scale.alpha}, {"p_hat", o.scale.p_hat}};
    j["planned_steps"] = o.planned_steps;
    j["nice_delta"] = o.nice_delta ? json(*o.nice_delta) : json(nullptr);
    j["final_route"] = o.final_route;
    j["final_attempts"] = o.final_attempts;
    json violations = json::array();
    for (const auto& v : o.last_violations)
        violations.push_back({{"conclusion", v.conclusion},
                              {"u", v.u},
                              {"v", v.v == kNoVertex ? json(nullptr) : json(v.v)},
                              {"value", finite_or_null(v.value)},
                              {"bound", finite_or_null(v.bound)}});
    j["last_violations"] = violations;
    j["trajectory"] = trajectory_to_json(o.trajectory);
    return j;
}

json state_stats_to_json(const ReductState& s)
{
    const auto& g = *s.graph;
    json vertices = json::array();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!s.is_alive(v))
            continue;
        vertices.push_back({{"v", v},
                            {"p", vertex_mass(s, v)},
                            {"p_m", moderate_mass(s, v)},
                            {"Q", entropy(s, v)},
                            {"edge_mass_sum_m", moderate_edge_mass_sum(s, v)}});
    }
    json edges = json::array();
    for (const auto& [u, v] : g.edges())
        if (s.is_alive(u) && s.is_alive(v))
            edges.push_back({{"u", u}, {"v", v}, {"p", edge_mass(s, u, v)}, {"p_m", moderate_edge_mass(s, u, v)}});
    NiceReport nice = check_nice(s);
    json j;
    j["vertices"] = vertices;
    j["edges"] = edges;
    j["nice"] = nice.delta ? json(*nice.delta) : json(nullptr);
    j["nice_terms"] = {{"a", finite_or_null(nice.min_moderate_mass)}, {"b", nice.weight_term}, {"c", nice.edge_term}};
    if (!nice.delta)
        j["nice_failure"] = nice.failure;
    return j;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Graph read_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return graph_from_json(json::parse(text));
        } catch (const json::parse_error& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    std::istringstream stream(text);
    return read_dimacs(stream);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace corrcolor::io

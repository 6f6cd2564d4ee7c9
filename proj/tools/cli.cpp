#include "cli.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "corrcolor/io.hpp"
#include "manifest.hpp"

#ifndef CORRCOLOR_VERSION
#define CORRCOLOR_VERSION "unknown"
#endif

namespace corrcolor::cli {

namespace {

using io::json;

struct Options {
    // shared
    std::string graph, cover, weights, lists, restrict, out, manifest;
    std::uint64_t seed = 0;
    std::uint64_t node_budget = 100'000'000;

    // gen-graph / gen-cover
    std::string kind;
    std::size_t n = 0, a = 0, b = 0, d = 0, m = 0, k = 0;
    double p = 0.0;
    std::optional<double> keep;
    bool triangle_free = false;
    std::size_t max_attempts = 10'000;

    // solve
    bool count = false;

    // lb-experiment
    std::size_t trials = 0;
    std::string witness_out, csv;

    // nibble
    std::string preset = "relaxed";
    std::string trace;
    std::string schedule;
    std::optional<double> ck, tolerance_scale, phat_floor;
    std::optional<std::size_t> max_steps, max_retries, final_retries;
    bool no_fallback = false;
};

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text))
        throw InputError("cannot write " + path);
}

class Runner {
public:
    Runner(const Options& opt, CLI::App* sub, std::ostream& out, std::ostream& err)
        : opt_(opt), sub_(sub), out_(out), err_(err)
    {
    }

    int dispatch()
    {
        const std::string name = sub_->get_name();
        if (name == "gen-graph") return gen_graph();
        if (name == "gen-cover") return gen_cover();
        if (name == "lift") return lift();
        if (name == "solve") return solve();
        if (name == "lb-experiment") return lb_experiment();
        if (name == "nibble") return nibble();
        if (name == "stats") return stats();
        if (name == "validate") return validate();
        throw InputError("unknown command " + name);
    }

private:
    const Options& opt_;
    CLI::App* sub_;
    std::ostream& out_;
    std::ostream& err_;

    void emit(const json& doc)
    {
        std::string text = io::dump(doc);
        if (opt_.out.empty())
            out_ << text;
        else
            write_text(opt_.out, text);
    }

    void emit_manifest()
    {
        RunManifest m;
        m.command = sub_->get_name();
        m.seed = opt_.seed;
        m.version = CORRCOLOR_VERSION;
        m.timestamp = utc_timestamp();
        for (const CLI::Option* o : sub_->get_options()) {
            std::string key = o->get_name(false, true);
            if (key == "-h,--help" || key == "--help")
                continue;
            key = o->get_name();
            std::string value;
            if (o->count() > 0) {
                const auto& results = o->results();
                for (std::size_t i = 0; i < results.size(); ++i)
                    value += (i ? "," : "") + results[i];
                if (results.empty())
                    value = "true";
            } else {
                value = o->get_default_str();
            }
            m.params[key] = value;
        }
        for (const std::string* path : {&opt_.graph, &opt_.cover, &opt_.weights, &opt_.lists, &opt_.restrict})
            if (!path->empty())
                m.input_digests[*path] = sha256_file(*path);

        json doc = manifest_to_json(m);
        std::string target = opt_.manifest;
        if (target.empty() && !opt_.out.empty())
            target = opt_.out + ".manifest.json";
        if (target.empty())
            err_ << "manifest: " << doc.dump() << '\n';
        else
            write_text(target, io::dump(doc));
    }

    Graph need_graph() const
    {
        if (opt_.graph.empty())
            throw InputError(sub_->get_name() + " needs --graph FILE");
        return io::read_graph_file(opt_.graph);
    }

    Cover need_cover(const Graph& g) const
    {
        if (opt_.cover.empty())
            throw InputError(sub_->get_name() + " needs --cover FILE");
        Cover c = io::cover_from_json(io::read_json_file(opt_.cover));
        if (c.num_vertices() != g.num_vertices())
            throw InputError("cover has " + std::to_string(c.num_vertices()) + " lists but the graph has " +
                             std::to_string(g.num_vertices()) + " vertices");
        return c;
    }

    void require(bool given, const char* what) const
    {
        if (!given)
            throw InputError(sub_->get_name() + " " + opt_.kind + " needs " + what);
    }

    bool given(const char* flag) const { return sub_->count(flag) > 0; }

    int gen_graph()
    {
        Graph g;
        const std::string& kind = opt_.kind;
        if (kind == "cycle") {
            require(given("--n"), "--n");
            g = gen_cycle(opt_.n);
        } else if (kind == "complete") {
            require(given("--n"), "--n");
            g = gen_complete(opt_.n);
        } else if (kind == "empty") {
            require(given("--n"), "--n");
            g = gen_empty(opt_.n);
        } else if (kind == "complete-bipartite") {
            require(given("--a") && given("--b"), "--a and --b");
            g = gen_complete_bipartite(opt_.a, opt_.b);
        } else if (kind == "petersen") {
            g = gen_petersen();
        } else if (kind == "random-regular") {
            require(given("--n") && given("--d"), "--n and --d");
            g = gen_random_regular(opt_.n, opt_.d, opt_.seed, {opt_.triangle_free, opt_.max_attempts});
        } else if (kind == "gnp") {
            require(given("--n") && given("--p"), "--n and --p");
            g = gen_gnp(opt_.n, opt_.p, opt_.seed);
        } else {
            require(given("--n") && given("--p"), "--n and --p");
            g = gen_random_triangle_free(opt_.n, opt_.p, opt_.seed);
        }
        emit(io::graph_to_json(g));
        emit_manifest();
        return 0;
    }

    int gen_cover()
    {
        Cover c;
        if (opt_.kind == "shifted-cycle") {
            require(given("--m"), "--m");
            c = shifted_cycle_cover(opt_.m);
        } else {
            Graph g = need_graph();
            require(given("--k"), "--k");
            if (opt_.kind == "identity") {
                std::vector<std::size_t> id(opt_.k);
                std::iota(id.begin(), id.end(), std::size_t{0});
                c = permutation_cover(g, opt_.k, std::vector<std::vector<std::size_t>>(g.num_edges(), id));
            } else {
                CoverMode mode = opt_.keep ? CoverMode::bernoulli(*opt_.keep) : CoverMode::perfect();
                c = random_cover(g, opt_.k, opt_.seed, mode);
            }
        }
        emit(io::cover_to_json(c));
        emit_manifest();
        return 0;
    }

    int lift()
    {
        Graph g = need_graph();
        if (opt_.lists.empty())
            throw InputError("lift needs --lists FILE");
        LiftedCover lifted = lift_from_lists(g, io::label_lists_from_json(io::read_json_file(opt_.lists)));
        json doc = io::cover_to_json(lifted.cover);
        doc["label_of"] = lifted.label_of;
        emit(doc);
        return 0;
    }

    int solve()
    {
        Graph g = need_graph();
        Cover c = need_cover(g);
        SolveOptions options;
        options.node_budget = opt_.node_budget;
        if (!opt_.restrict.empty()) {
            auto restrict = io::restrict_from_json(io::read_json_file(opt_.restrict));
            if (restrict.size() != g.num_vertices())
                throw InputError("restrict document needs one list per vertex");
            options.restrict = std::move(restrict);
        }
        json doc;
        if (opt_.count) {
            CountResult r = count_colorings(g, c, options);
            doc["status"] = r.count > 0 ? "colorable" : "not_colorable";
            doc["count"] = r.count;
            doc["nodes_explored"] = r.nodes;
        } else {
            SolveResult r = solve_exact(g, c, options);
            doc["status"] = r.coloring ? "colorable" : "not_colorable";
            if (r.coloring)
                doc["coloring"] = io::coloring_to_json(*r.coloring);
            doc["nodes_explored"] = r.nodes;
        }
        emit(doc);
        return 0;
    }

    int lb_experiment()
    {
        Graph g = need_graph();
        LowerBoundOptions options;
        options.node_budget = opt_.node_budget;
        if (opt_.keep)
            options.mode = CoverMode::bernoulli(*opt_.keep);
        LowerBoundReport r = run_lb_experiment(g, opt_.k, opt_.trials, opt_.seed, options);
        emit(io::report_to_json(r));
        if (!opt_.witness_out.empty()) {
            if (r.witness)
                write_text(opt_.witness_out, io::dump(io::cover_to_json(*r.witness)));
            else
                err_ << "note: every trial was colorable or over budget; no witness written\n";
        }
        if (!opt_.csv.empty())
            write_text(opt_.csv, io::per_trial_csv(r));
        emit_manifest();
        return 0;
    }

    int nibble()
    {
        Graph g = need_graph();
        Cover c = need_cover(g);
        NibbleParams params = opt_.preset == "paper" ? NibbleParams::paper() : NibbleParams::relaxed();
        if (opt_.ck) params.ck = *opt_.ck;
        if (opt_.tolerance_scale) params.tolerance_scale = *opt_.tolerance_scale;
        if (opt_.phat_floor) params.phat_floor = *opt_.phat_floor;
        if (opt_.max_steps) params.max_steps = *opt_.max_steps;
        if (opt_.max_retries) params.max_retries_per_step = *opt_.max_retries;
        if (opt_.final_retries) params.max_final_retries = *opt_.final_retries;
        if (!opt_.schedule.empty())
            params.schedule = opt_.schedule == "fixed" ? ScheduleMode::fixed_istar : ScheduleMode::until_nice;
        if (opt_.no_fallback)
            params.exact_fallback = false;

        NibbleOutcome outcome = run_nibble(g, c, params, opt_.seed);
        json doc = io::nibble_outcome_to_json(outcome);
        doc["seed"] = opt_.seed;
        doc["params"] = io::params_to_json(params);
        emit(doc);
        if (!opt_.trace.empty())
            write_text(opt_.trace, io::trajectory_csv(outcome.trajectory));
        emit_manifest();
        if (outcome.status != NibbleStatus::success) {
            err_ << "nibble: " << to_string(outcome.status) << ": " << outcome.message << '\n';
            return 1;
        }
        return 0;
    }

    int stats()
    {
        Graph g = need_graph();
        auto c = std::make_shared<const Cover>(need_cover(g));
        if (opt_.weights.empty())
            throw InputError("stats needs --weights FILE");
        Weighting w = io::weighting_from_json(io::read_json_file(opt_.weights));
        ReductState s = make_state(std::make_shared<const Graph>(g), c, std::move(w),
                                   static_cast<double>(max_degree(g)));
        emit(io::state_stats_to_json(s));
        return 0;
    }

    int validate()
    {
        Graph g = need_graph();
        if (opt_.cover.empty())
            throw InputError("validate needs --cover FILE");
        Cover c = io::cover_from_json(io::read_json_file(opt_.cover));
        CoverReport report;
        if (c.num_vertices() != g.num_vertices())
            report.violations.push_back("cover has " + std::to_string(c.num_vertices()) + " lists for " +
                                        std::to_string(g.num_vertices()) + " vertices");
        else
            report = validate_cover(g, c);
        emit({{"ok", report.ok()}, {"violations", report.violations}});
        return report.ok() ? 0 : 1;
    }
};

void add_graph_option(CLI::App* sub, Options& opt, bool required)
{
    auto* o = sub->add_option("--graph", opt.graph, "graph file (JSON or DIMACS)");
    if (required)
        o->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Correspondence coloring toolkit", "corrcolor"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CORRCOLOR_VERSION));

    auto out_option = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "write the result here instead of stdout"); };
    auto manifest_option = [&](CLI::App* sub) {
        sub->add_option("--manifest", opt.manifest, "manifest path (default: <out>.manifest.json, else stderr)");
    };

    auto* gen_graph = app.add_subcommand("gen-graph", "generate a graph");
    gen_graph->add_option("kind", opt.kind, "graph family")
        ->required()
        ->check(CLI::IsMember(
            {"cycle", "complete", "empty", "complete-bipartite", "petersen", "random-regular", "gnp", "triangle-free"}));
    gen_graph->add_option("--n", opt.n, "vertex count");
    gen_graph->add_option("--a", opt.a, "left side of K_{a,b}");
    gen_graph->add_option("--b", opt.b, "right side of K_{a,b}");
    gen_graph->add_option("--d", opt.d, "degree of a random regular graph");
    gen_graph->add_option("--p", opt.p, "edge probability")->check(CLI::Range(0.0, 1.0));
    gen_graph->add_flag("--triangle-free", opt.triangle_free, "reject regular graphs with triangles");
    gen_graph->add_option("--max-attempts", opt.max_attempts, "restart budget for random-regular");
    gen_graph->add_option("--seed", opt.seed, "random seed");
    out_option(gen_graph);
    manifest_option(gen_graph);

    auto* gen_cover = app.add_subcommand("gen-cover", "generate a cover of a graph");
    gen_cover->add_option("kind", opt.kind, "cover family")
        ->required()
        ->check(CLI::IsMember({"random", "identity", "shifted-cycle"}));
    add_graph_option(gen_cover, opt, false);
    gen_cover->add_option("--k", opt.k, "list size");
    gen_cover->add_option("--m", opt.m, "cycle length for shifted-cycle");
    gen_cover->add_option("--keep", opt.keep, "keep each matched pair with this probability (random only)")
        ->check(CLI::Range(0.0, 1.0));
    gen_cover->add_option("--seed", opt.seed, "random seed");
    out_option(gen_cover);
    manifest_option(gen_cover);

    auto* lift = app.add_subcommand("lift", "cover induced by a list assignment");
    add_graph_option(lift, opt, true);
    lift->add_option("--lists", opt.lists, "list assignment {\"lists\": [[labels]]}")->required();
    out_option(lift);

    auto* solve = app.add_subcommand("solve", "find or count cover colorings");
    add_graph_option(solve, opt, true);
    solve->add_option("--cover", opt.cover, "cover file")->required();
    solve->add_flag("--count", opt.count, "count all colorings");
    solve->add_option("--restrict", opt.restrict, "allowed colors {\"restrict\": [[ids]]}");
    solve->add_option("--node-budget", opt.node_budget, "search node limit");
    out_option(solve);

    auto* lb = app.add_subcommand("lb-experiment", "sample random covers and count colorings");
    add_graph_option(lb, opt, true);
    lb->add_option("--k", opt.k, "list size")->required()->check(CLI::PositiveNumber);
    lb->add_option("--trials", opt.trials, "number of random covers")->required();
    lb->add_option("--seed", opt.seed, "random seed");
    lb->add_option("--keep", opt.keep, "Bernoulli cover mode with this keep probability")->check(CLI::Range(0.0, 1.0));
    lb->add_option("--node-budget", opt.node_budget, "search node limit per trial");
    lb->add_option("--witness-out", opt.witness_out, "write the first non-colorable cover here");
    lb->add_option("--csv", opt.csv, "write per-trial counts here");
    out_option(lb);
    manifest_option(lb);

    auto* nibble = app.add_subcommand("nibble", "color a triangle-free graph with the nibble");
    add_graph_option(nibble, opt, true);
    nibble->add_option("--cover", opt.cover, "cover file")->required();
    nibble->add_option("--preset", opt.preset, "parameter preset")->check(CLI::IsMember({"paper", "relaxed"}));
    nibble->add_option("--ck", opt.ck, "list-size constant");
    nibble->add_option("--tolerance-scale", opt.tolerance_scale, "multiplier on every per-step deviation bound");
    nibble->add_option("--phat-floor", opt.phat_floor, "lower bound on p_hat in units of 1/k");
    nibble->add_option("--schedule", opt.schedule, "fixed (i* steps) or until-nice")
        ->check(CLI::IsMember({"fixed", "until-nice"}));
    nibble->add_option("--max-steps", opt.max_steps, "step cap for until-nice");
    nibble->add_option("--max-retries", opt.max_retries, "resampling budget per step");
    nibble->add_option("--final-retries", opt.final_retries, "resampling budget for the final coloring");
    nibble->add_flag("--no-fallback", opt.no_fallback, "skip the exact search after final resampling fails");
    nibble->add_option("--seed", opt.seed, "random seed");
    nibble->add_option("--trace", opt.trace, "write the per-step trajectory CSV here");
    out_option(nibble);
    manifest_option(nibble);

    auto* stats = app.add_subcommand("stats", "masses, entropies and niceness of a weighting");
    add_graph_option(stats, opt, true);
    stats->add_option("--cover", opt.cover, "cover file")->required();
    stats->add_option("--weights", opt.weights, "weights {\"p_hat\": x, \"p\": [...]}")->required();
    out_option(stats);

    auto* validate = app.add_subcommand("validate", "check that a cover is well formed");
    add_graph_option(validate, opt, true);
    validate->add_option("--cover", opt.cover, "cover file")->required();
    out_option(validate);

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    if (argv.empty())
        argv.push_back("corrcolor");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << " (try --help)\n";
        return 2;
    }

    try {
        Runner runner(opt, app.get_subcommands().front(), out, err);
        return runner.dispatch();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace corrcolor::cli

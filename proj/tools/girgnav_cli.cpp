// girgnav command line: graph generation, routing, experiments and summaries.

#include <girgnav/config.hpp>
#include <girgnav/error.hpp>
#include <girgnav/experiments.hpp>
#include <girgnav/graph_io.hpp>
#include <girgnav/patching.hpp>
#include <girgnav/routing.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace girgnav;

namespace {

constexpr int kConfigExit = 2;
constexpr int kIoExit = 3;

/// Opens `path` for writing, or returns nullopt for stdout ("-" or empty).
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void close(const std::string& path) {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw IoError("cannot write " + path);
        } else {
            std::cout.flush();
        }
    }

private:
    std::ofstream file_;
};

VertexId pick_vertex(const std::string& spec, std::size_t n, Rng& rng, std::optional<VertexId> avoid) {
    if (n == 0) throw ConfigError("graph has no vertices");
    if (spec == "random") {
        if (!avoid) return static_cast<VertexId>(rng.below(n));
        if (n < 2) throw ConfigError("need two vertices to pick distinct random endpoints");
        auto v = static_cast<VertexId>(rng.below(n - 1));
        return v >= *avoid ? v + 1 : v;
    }
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(spec, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != spec.size() || spec.empty() || spec[0] == '-') throw ConfigError("vertex must be an id or 'random': " + spec);
    if (v >= n) throw ConfigError("vertex id out of range: " + spec);
    return static_cast<VertexId>(v);
}

std::string fmt(double x) { return format_real(x); }

std::string fmt(Score s) {
    if (s.is_top()) return "TOP";
    return fmt(s.value());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric inhomogeneous random graphs: sampling and greedy routing"};
    app.require_subcommand(1);

    std::string config_path, out_path, graph_path, in_path, plot_path;
    std::string source = "random", target = "random", algo = "greedy", objective = "phi";
    bool trace = false;
    std::uint64_t seed = 1, step_limit = 0, relax_seed = 0;
    std::vector<double> band{1.0, 1.0};
    std::optional<double> relax_exponent;

    auto* generate = app.add_subcommand("generate", "Sample a graph from a config file");
    generate->add_option("--config", config_path, "Config file")->required();
    generate->add_option("--out", out_path, "Graph file to write")->required();

    auto* route = app.add_subcommand("route", "Route one message on a stored graph");
    route->add_option("--graph", graph_path, "Graph file")->required();
    route->add_option("--source", source, "Source id or 'random'");
    route->add_option("--target", target, "Target id or 'random'");
    route->add_option("--algo", algo, "Routing algorithm")
        ->check(CLI::IsMember({"greedy", "patch", "patch-history"}));
    route->add_option("--objective", objective, "Objective")->check(CLI::IsMember({"phi", "phi-relaxed", "phi-h"}));
    route->add_flag("--trace", trace, "Print per-step trace or event log");
    route->add_option("--seed", seed, "Seed for random endpoints");
    route->add_option("--step-limit", step_limit, "Step limit (0 = default)");
    route->add_option("--relax-band", band, "Relaxation factor band lo hi")->expected(2);
    route->add_option("--relax-exponent", relax_exponent, "Constant relaxation exponent");
    route->add_option("--relax-seed", relax_seed, "Relaxation seed");
    route->add_option("--out", out_path, "Output file (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "Run trials and write a CSV");
    experiment->add_option("--config", config_path, "Config file")->required();
    experiment->add_option("--out", out_path, "Trials CSV to write")->required();
    experiment->add_option("--plot", plot_path, "Also write w_min failure-curve plot data");

    auto* stats = app.add_subcommand("stats", "Summarize a trials CSV");
    stats->add_option("--in", in_path, "Trials CSV")->required();
    stats->add_option("--out", out_path, "Summary file (default stdout)");

    auto* convert = app.add_subcommand("convert", "Hyperbolic graph to GIRG-coordinate graph");
    convert->add_option("--in", in_path, "Hyperbolic graph file")->required();
    convert->add_option("--out", out_path, "GIRG graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigExit;
    }

    try {
        if (generate->parsed()) {
            const ExperimentConfig cfg = load_experiment_config(config_path);
            if (cfg.model_kind == ModelKind::Girg) {
                save_graph(out_path, sample_graph(cfg.model));
            } else {
                save_hyperbolic_graph(out_path, sample_hyperbolic_graph(cfg.hyperbolic));
            }
        } else if (route->parsed()) {
            const AnyGraph any = load_any_graph(graph_path);
            const HyperbolicGraph* hg = std::get_if<HyperbolicGraph>(&any);
            const Graph& g = hg ? hg->graph : std::get<Graph>(any);
            Rng rng(derive_seed(seed, {stream::pairs}));
            const VertexId s = pick_vertex(source, g.num_vertices(), rng, std::nullopt);
            const VertexId t = pick_vertex(target, g.num_vertices(), rng, std::optional<VertexId>(s));

            std::optional<Objective> obj;
            if (objective == "phi") {
                obj = Objective::exact(t);
            } else if (objective == "phi-relaxed") {
                Relaxation rx;
                rx.band = {band[0], band[1]};
                if (relax_exponent) {
                    const double e = *relax_exponent;
                    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("--relax-exponent must lie in [0, 1)");
                    rx.exponent_fn = [e](double) { return e; };
                }
                rx.seed = relax_seed;
                obj = Objective::relaxed(t, std::move(rx));
            } else {
                if (!hg) throw ConfigError("objective phi-h needs a hyperbolic graph file");
                obj = Objective::hyperbolic(t, *hg);
            }

            Output out(out_path);
            std::ostream& os = out.stream();
            os << "source " << s << "\ntarget " << t << '\n';
            const double n = static_cast<double>(g.num_vertices());
            if (algo == "greedy") {
                const RouteOutcome o = greedy_route(g, s, *obj, step_limit ? step_limit : default_step_limit(n));
                os << "status " << to_string(o.status) << "\nsteps " << o.steps << "\npath";
                for (VertexId v : o.path) os << ' ' << v;
                os << '\n';
                if (trace)
                    for (const TraceEntry& e : o.trace)
                        os << "trace " << e.vertex << ' ' << fmt(e.score) << ' ' << e.inspected << '\n';
            } else {
                const auto limit = step_limit ? step_limit : default_patch_step_limit(n);
                const PatchOutcome o =
                    algo == "patch" ? patch_route(g, s, *obj, limit) : patch_route_history(g, s, *obj, limit);
                os << "status " << to_string(o.status) << "\nsteps " << o.steps << "\ndistinct " << o.distinct_visited
                   << "\nmax_vertex_memory_words " << o.max_vertex_memory_words << "\npath";
                for (VertexId v : o.path) os << ' ' << v;
                os << '\n';
                if (trace) write_event_log(os, o.event_log);
            }
            out.close(out_path);
        } else if (experiment->parsed()) {
            const ExperimentConfig cfg = load_experiment_config(config_path);
            if (!plot_path.empty() && (cfg.model_kind != ModelKind::Girg || !cfg.model.ep3 || cfg.sweep_wmin.empty()))
                throw ConfigError("--plot needs a girg config with ep3 = true and sweep_wmin");
            const auto records = run_experiment(cfg);
            Output out(out_path);
            write_trials_csv(out.stream(), records);
            out.close(out_path);
            if (!plot_path.empty()) {
                Output plot(plot_path);
                write_plot_data(plot.stream(), failure_curve(records).points);
                plot.close(plot_path);
            }
        } else if (stats->parsed()) {
            std::ifstream in(in_path, std::ios::binary);
            if (!in) throw IoError("cannot open " + in_path);
            const auto records = read_trials_csv(in);
            if (records.empty()) throw IoError(in_path + ": no trial records");
            Output out(out_path);
            write_summary(out.stream(), summarize(records));
            out.close(out_path);
        } else if (convert->parsed()) {
            const AnyGraph any = load_any_graph(in_path);
            const auto* hg = std::get_if<HyperbolicGraph>(&any);
            if (!hg) throw IoError(in_path + ": not a hyperbolic graph file");
            save_graph(out_path, hg->graph);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigExit;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigExit;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIoExit;
    }
    return 0;
}

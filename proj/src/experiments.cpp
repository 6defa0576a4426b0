#include <girgnav/experiments.hpp>

#include <girgnav/error.hpp>
#include <girgnav/graph_core.hpp>
#include <girgnav/hyperbolic.hpp>
#include <girgnav/stats.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace girgnav {

namespace {

struct GridPoint {
    double n;
    std::optional<double> wmin;
};

std::vector<GridPoint> grid(const ExperimentConfig& cfg) {
    std::vector<double> ns = cfg.sweep_n;
    if (ns.empty()) ns.push_back(cfg.model_kind == ModelKind::Girg ? cfg.model.n : double(cfg.hyperbolic.n));
    std::vector<GridPoint> out;
    for (double n : ns) {
        if (cfg.sweep_wmin.empty()) {
            out.push_back({n, std::nullopt});
        } else {
            for (double w : cfg.sweep_wmin) out.push_back({n, w});
        }
    }
    return out;
}

Objective make_objective(const ExperimentConfig& cfg, VertexId t, std::uint64_t trial_seed,
                         const HyperbolicGraph* hg) {
    switch (cfg.objective.kind) {
    case ObjectiveChoice::Phi:
        return Objective::exact(t);
    case ObjectiveChoice::PhiRelaxed: {
        Relaxation rx;
        rx.band = cfg.objective.band;
        if (cfg.objective.exponent) {
            const double g = *cfg.objective.exponent;
            rx.exponent_fn = [g](double) { return g; };
        }
        rx.seed = derive_seed(cfg.objective.seed, {stream::relax, trial_seed});
        rx.weak = cfg.objective.weak;
        rx.delta = cfg.objective.delta;
        return Objective::relaxed(t, std::move(rx));
    }
    case ObjectiveChoice::PhiHyperbolic:
        return Objective::hyperbolic(t, *hg);
    }
    return Objective::exact(t);
}

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, const GridPoint& point, std::size_t grid_index,
                                   std::uint64_t trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, {stream::trial, grid_index, trial});
    std::optional<HyperbolicGraph> hg;
    Graph g;
    std::size_t pairs = cfg.pairs_per_graph;
    bool fixed = false;
    if (cfg.model_kind == ModelKind::Girg) {
        ModelParams p = cfg.model;
        p.n = point.n;
        if (point.wmin) p.w_min = *point.wmin;
        p.seed = trial_seed;
        if (cfg.pair_selection == PairSelection::Fixed) {
            const std::vector<Vertex> injected{{0, TorusPoint(cfg.fixed.source_position), cfg.fixed.source_weight},
                                               {0, TorusPoint(cfg.fixed.target_position), cfg.fixed.target_weight}};
            g = sample_graph(p, injected);
            fixed = true;
            pairs = 1;
        } else {
            g = sample_graph(p);
        }
    } else {
        HyperbolicParams hp = cfg.hyperbolic;
        hp.n = static_cast<std::uint64_t>(point.n);
        hp.seed = trial_seed;
        hg = sample_hyperbolic_graph(hp);
        g = hg->graph;
    }

    std::vector<TrialRecord> out;
    const std::size_t nv = g.num_vertices();
    if (nv < 2) return out;
    const ComponentLabeling labels = connected_components(g);
    Rng rng(derive_seed(trial_seed, {stream::pairs}));
    const ModelParams& mp = g.params();
    std::optional<double> yardstick;
    if (point.n > std::exp(1.0) && mp.beta > 2.0 && mp.beta < 3.0) yardstick = path_length_yardstick(point.n, mp.beta);

    for (std::size_t pair = 0; pair < pairs; ++pair) {
        VertexId s, t;
        if (fixed) {
            s = static_cast<VertexId>(nv - 2);
            t = static_cast<VertexId>(nv - 1);
        } else {
            s = static_cast<VertexId>(rng.below(nv));
            t = static_cast<VertexId>(rng.below(nv - 1));
            if (t >= s) ++t;
        }
        TrialRecord r;
        r.trial = trial;
        r.pair = pair;
        r.n = point.n;
        r.wmin = mp.w_min;
        r.beta = mp.beta;
        r.n_realized = nv;
        r.s = s;
        r.t = t;
        r.w_s = g.weight(s);
        r.w_t = g.weight(t);
        const Score ps = phi(g, s, t);
        r.phi_s = ps.value();
        r.same_component = labels.same(s, t);
        if (r.same_component) r.bfs = bfs_distance(g, s, t);
        r.yardstick = yardstick;
        r.yardstick_refined = refined_yardstick(mp.beta, r.w_s, r.w_t, r.phi_s);

        const Objective obj = make_objective(cfg, t, trial_seed, hg ? &*hg : nullptr);
        if (cfg.algorithms.greedy) {
            const auto limit = cfg.greedy_step_limit ? cfg.greedy_step_limit : default_step_limit(double(nv));
            const RouteOutcome o = greedy_route(g, s, obj, limit);
            r.greedy_status = o.status;
            r.greedy_steps = o.steps;
            if (o.status == RouteStatus::Delivered && r.bfs && *r.bfs >= 1)
                r.stretch = static_cast<double>(o.steps) / static_cast<double>(*r.bfs);
        }
        const auto plimit = cfg.patch_step_limit ? cfg.patch_step_limit : default_patch_step_limit(double(nv));
        if (cfg.algorithms.patch) {
            const PatchOutcome o = patch_route(g, s, obj, plimit);
            r.patch_status = o.status;
            r.patch_steps = o.steps;
        }
        if (cfg.algorithms.patch_history) {
            const PatchOutcome o = patch_route_history(g, s, obj, plimit);
            r.patch_history_status = o.status;
            r.patch_history_steps = o.steps;
        }
        out.push_back(r);
    }
    return out;
}

std::string real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
std::string opt(const std::optional<T>& x) {
    if (!x) return "NA";
    if constexpr (std::is_floating_point_v<T>) {
        return real(*x);
    } else if constexpr (std::is_same_v<T, RouteStatus> || std::is_same_v<T, PatchStatus>) {
        return std::string(to_string(*x));
    } else {
        return std::to_string(*x);
    }
}

constexpr const char* kTrialHeader =
    "trial,pair,n,wmin,beta,n_realized,s,t,w_s,w_t,phi_s,same_component,bfs,greedy_status,greedy_steps,"
    "patch_status,patch_steps,patch_history_status,patch_history_steps,stretch,yardstick,yardstick_refined";

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s) {
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw IoError("malformed number '" + s + "'");
    }
    if (pos != s.size()) throw IoError("malformed number '" + s + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw IoError("malformed integer '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw IoError("malformed integer '" + s + "'");
    }
}

template <class T, class F>
std::optional<T> parse_opt(const std::string& s, F f) {
    if (s == "NA") return std::nullopt;
    return static_cast<T>(f(s));
}

RouteStatus parse_route_status(const std::string& s) {
    for (auto st : {RouteStatus::Delivered, RouteStatus::DeadEnd, RouteStatus::StepLimit})
        if (to_string(st) == s) return st;
    throw IoError("unknown greedy status '" + s + "'");
}

PatchStatus parse_patch_status(const std::string& s) {
    for (auto st : {PatchStatus::Delivered, PatchStatus::Exhausted, PatchStatus::StepLimit})
        if (to_string(st) == s) return st;
    throw IoError("unknown patch status '" + s + "'");
}

} // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<GridPoint> points = grid(cfg);
    struct Job {
        std::size_t grid;
        std::uint64_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t gi = 0; gi < points.size(); ++gi)
        for (std::uint64_t tr = 0; tr < cfg.trials; ++tr) jobs.push_back({gi, tr});

    std::vector<std::vector<TrialRecord>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                results[i] = run_trial(cfg, points[jobs[i].grid], jobs[i].grid, jobs[i].trial);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = jobs.size();
            }
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(cfg.threads), std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    std::vector<TrialRecord> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kTrialsSchema << '\n' << kTrialHeader << '\n';
    for (const TrialRecord& r : records) {
        out << r.trial << ',' << r.pair << ',' << real(r.n) << ',' << real(r.wmin) << ',' << real(r.beta) << ','
            << r.n_realized << ',' << r.s << ',' << r.t << ',' << real(r.w_s) << ',' << real(r.w_t) << ','
            << real(r.phi_s) << ',' << (r.same_component ? 1 : 0) << ',' << opt(r.bfs) << ','
            << opt(r.greedy_status) << ',' << opt(r.greedy_steps) << ',' << opt(r.patch_status) << ','
            << opt(r.patch_steps) << ',' << opt(r.patch_history_status) << ',' << opt(r.patch_history_steps) << ','
            << opt(r.stretch) << ',' << opt(r.yardstick) << ',' << opt(r.yardstick_refined) << '\n';
    }
}

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTrialsSchema) throw IoError("missing trials schema row");
    if (!std::getline(in, line) || line != kTrialHeader) throw IoError("unexpected trials header");
    std::vector<TrialRecord> out;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 22) throw IoError("line " + std::to_string(lineno) + ": expected 22 fields");
        TrialRecord r;
        try {
            r.trial = parse_uint(f[0]);
            r.pair = parse_uint(f[1]);
            r.n = parse_real(f[2]);
            r.wmin = parse_real(f[3]);
            r.beta = parse_real(f[4]);
            r.n_realized = parse_uint(f[5]);
            r.s = static_cast<VertexId>(parse_uint(f[6]));
            r.t = static_cast<VertexId>(parse_uint(f[7]));
            r.w_s = parse_real(f[8]);
            r.w_t = parse_real(f[9]);
            r.phi_s = parse_real(f[10]);
            if (f[11] != "0" && f[11] != "1") throw IoError("malformed same_component");
            r.same_component = f[11] == "1";
            r.bfs = parse_opt<std::uint32_t>(f[12], parse_uint);
            r.greedy_status = parse_opt<RouteStatus>(f[13], parse_route_status);
            r.greedy_steps = parse_opt<std::uint64_t>(f[14], parse_uint);
            r.patch_status = parse_opt<PatchStatus>(f[15], parse_patch_status);
            r.patch_steps = parse_opt<std::uint64_t>(f[16], parse_uint);
            r.patch_history_status = parse_opt<PatchStatus>(f[17], parse_patch_status);
            r.patch_history_steps = parse_opt<std::uint64_t>(f[18], parse_uint);
            r.stretch = parse_opt<double>(f[19], parse_real);
            r.yardstick = parse_opt<double>(f[20], parse_real);
            r.yardstick_refined = parse_opt<double>(f[21], parse_real);
        } catch (const IoError& e) {
            throw IoError("line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(r);
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw InvalidInput("summarize needs at least one record");
    std::vector<SummaryRow> rows;
    std::vector<std::vector<const TrialRecord*>> groups;
    for (const TrialRecord& r : records) {
        std::size_t i = 0;
        while (i < rows.size() && !(rows[i].n == r.n && rows[i].wmin == r.wmin && rows[i].beta == r.beta)) ++i;
        if (i == rows.size()) {
            SummaryRow row;
            row.n = r.n;
            row.wmin = r.wmin;
            row.beta = r.beta;
            rows.push_back(row);
            groups.emplace_back();
        }
        groups[i].push_back(&r);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SummaryRow& row = rows[i];
        const auto& group = groups[i];
        row.records = group.size();
        auto add = [&](const char* name, auto status_of, auto steps_of, auto delivered_value) {
            AlgorithmSummary a;
            a.algorithm = name;
            std::vector<double> steps;
            for (const TrialRecord* r : group) {
                const auto st = status_of(*r);
                if (!st) continue;
                ++a.runs;
                const bool ok = *st == delivered_value;
                if (ok) {
                    ++a.delivered;
                    steps.push_back(static_cast<double>(*steps_of(*r)));
                }
                if (r->same_component) {
                    ++a.runs_same_component;
                    a.delivered_same_component += ok;
                }
            }
            if (a.runs == 0) return;
            a.rate = static_cast<double>(a.delivered) / static_cast<double>(a.runs);
            std::tie(a.ci_lo, a.ci_hi) = wilson_interval(a.delivered, a.runs);
            if (!steps.empty()) {
                a.mean_steps = mean(steps);
                a.median_steps = median(steps);
            }
            row.algorithms.push_back(a);
        };
        add("greedy", [](const TrialRecord& r) { return r.greedy_status; },
            [](const TrialRecord& r) { return r.greedy_steps; }, RouteStatus::Delivered);
        add("patch", [](const TrialRecord& r) { return r.patch_status; },
            [](const TrialRecord& r) { return r.patch_steps; }, PatchStatus::Delivered);
        add("patch-history", [](const TrialRecord& r) { return r.patch_history_status; },
            [](const TrialRecord& r) { return r.patch_history_steps; }, PatchStatus::Delivered);

        std::vector<double> stretch, refined;
        for (const TrialRecord* r : group) {
            if (r->stretch) stretch.push_back(*r->stretch);
            if (r->yardstick_refined) refined.push_back(*r->yardstick_refined);
            if (r->yardstick) row.yardstick = r->yardstick;
        }
        if (!stretch.empty()) {
            row.mean_stretch = mean(stretch);
            row.median_stretch = median(stretch);
        }
        if (!refined.empty()) row.mean_refined_yardstick = mean(refined);
    }
    return rows;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << kSummarySchema << '\n'
        << "n,wmin,beta,records,algorithm,runs,delivered,rate,ci_lo,ci_hi,same_component_runs,"
           "same_component_delivered,mean_steps,median_steps,mean_stretch,median_stretch,yardstick,"
           "mean_yardstick_refined\n";
    for (const SummaryRow& row : rows) {
        for (const AlgorithmSummary& a : row.algorithms) {
            out << real(row.n) << ',' << real(row.wmin) << ',' << real(row.beta) << ',' << row.records << ','
                << a.algorithm << ',' << a.runs << ',' << a.delivered << ',' << real(a.rate) << ','
                << real(a.ci_lo) << ',' << real(a.ci_hi) << ',' << a.runs_same_component << ','
                << a.delivered_same_component << ',' << opt(a.mean_steps) << ',' << opt(a.median_steps) << ','
                << opt(row.mean_stretch) << ',' << opt(row.median_stretch) << ',' << opt(row.yardstick) << ','
                << opt(row.mean_refined_yardstick) << '\n';
        }
    }
}

FailureCurve failure_curve(const std::vector<TrialRecord>& records) {
    FailureCurve curve;
    for (const TrialRecord& r : records) {
        if (!r.greedy_status) continue;
        auto it = std::find_if(curve.points.begin(), curve.points.end(), [&](const CurvePoint& p) { return p.x == r.wmin; });
        if (it == curve.points.end()) {
            CurvePoint p;
            p.x = r.wmin;
            curve.points.push_back(p);
            it = curve.points.end() - 1;
        }
        ++it->trials;
        it->failures += *r.greedy_status != RouteStatus::Delivered;
    }
    std::vector<double> xs, ys;
    for (CurvePoint& p : curve.points) {
        p.y = static_cast<double>(p.failures) / static_cast<double>(p.trials);
        std::tie(p.ci_lo, p.ci_hi) = wilson_interval(p.failures, p.trials);
        if (p.failures > 0) {
            xs.push_back(p.x);
            ys.push_back(std::log(p.y));
        }
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        curve.decreasing_steps += curve.points[i].y < curve.points[i - 1].y;
    if (xs.size() >= 2) curve.log_slope = fit_slope(xs, ys);
    return curve;
}

FailureCurve sweep_wmin(const ExperimentConfig& cfg) {
    if (cfg.model_kind != ModelKind::Girg) throw ConfigError("model: w_min sweeps need model = girg");
    if (!cfg.model.ep3) throw ConfigError("ep3: w_min sweeps require ep3 = true");
    if (cfg.sweep_wmin.empty()) throw ConfigError("sweep_wmin: grid must not be empty");
    if (!cfg.algorithms.greedy) throw ConfigError("algorithms: w_min sweeps need greedy");
    return failure_curve(run_experiment(cfg));
}

void write_plot_data(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << kPlotSchema << '\n' << "x,y,ci_lo,ci_hi\n";
    for (const CurvePoint& p : points)
        out << real(p.x) << ',' << real(p.y) << ',' << real(p.ci_lo) << ',' << real(p.ci_hi) << '\n';
}

} // namespace girgnav

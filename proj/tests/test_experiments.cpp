#include <girgnav/error.hpp>
#include <girgnav/experiments.hpp>
#include <girgnav/stats.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace girgnav;

namespace {

ExperimentConfig base(const char* extra = "") {
    std::string text = "n = 1500\nbeta = 2.5\nw_min = 1.5\nalpha = inf\ntrials = 6\npairs_per_graph = 4\n"
                       "algorithms = greedy, patch, patch-history\nmaster_seed = 11\n";
    return parse_experiment_config(text + extra);
}

}

TEST_SUITE("experiments") {

TEST_CASE("zero trials give no records") {
    auto cfg = base();
    cfg.trials = 0;
    CHECK(run_experiment(cfg).empty());
    CHECK_THROWS_AS(summarize({}), InvalidInput);
}

TEST_CASE("records are deterministic and independent of thread count") {
    unsetenv("GIRG_NAV_THREADS");
    auto cfg = base();
    cfg.threads = 1;
    const auto a = run_experiment(cfg);
    cfg.threads = 3;
    const auto b = run_experiment(cfg);
    CHECK(a.size() == 24);
    CHECK(a == b);
    cfg.master_seed = 12;
    CHECK(run_experiment(cfg) != a);
}

TEST_CASE("record fields are consistent") {
    const auto cfg = base();
    const auto records = run_experiment(cfg);
    for (const auto& r : records) {
        CAPTURE(r.trial);
        CAPTURE(r.pair);
        CHECK(r.s != r.t);
        CHECK(r.s < r.n_realized);
        CHECK(r.t < r.n_realized);
        CHECK(r.n == 1500);
        CHECK(r.wmin == 1.5);
        CHECK(r.w_s >= 1.5);
        CHECK(r.bfs.has_value() == r.same_component);
        REQUIRE(r.patch_status);
        REQUIRE(r.patch_history_status);
        CHECK((*r.patch_status == PatchStatus::Delivered) == r.same_component);
        CHECK((*r.patch_history_status == PatchStatus::Delivered) == r.same_component);
        if (*r.greedy_status == RouteStatus::Delivered) {
            CHECK(r.same_component);
            CHECK(*r.greedy_steps >= *r.bfs);
            CHECK(r.stretch == doctest::Approx(double(*r.greedy_steps) / *r.bfs));
            CHECK(*r.patch_steps == *r.greedy_steps);
        } else {
            CHECK_FALSE(r.stretch);
        }
        CHECK(r.yardstick == doctest::Approx(path_length_yardstick(1500, 2.5)));
    }
}

TEST_CASE("csv round trip") {
    const auto records = run_experiment(base("objective = phi-relaxed\nrelax_band = 0.5, 2\n"));
    std::stringstream buf;
    write_trials_csv(buf, records);
    const std::string text = buf.str();
    CHECK(text.rfind(std::string(kTrialsSchema) + "\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_trials_csv(in);
    CHECK(back == records);
    std::ostringstream again;
    write_trials_csv(again, back);
    CHECK(again.str() == text);
}

TEST_CASE("malformed csv") {
    std::istringstream none("");
    CHECK_THROWS_AS(read_trials_csv(none), IoError);
    std::stringstream buf;
    write_trials_csv(buf, run_experiment(base()));
    std::string text = buf.str();
    std::istringstream truncated(text.substr(0, text.size() - 5));
    CHECK_THROWS_AS(read_trials_csv(truncated), IoError);
    std::istringstream wrong_schema("#schema=other/1\n");
    CHECK_THROWS_AS(read_trials_csv(wrong_schema), IoError);
}

TEST_CASE("summary rows") {
    const auto records = run_experiment(base("sweep_n = 500, 1500\n"));
    const auto rows = summarize(records);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 500);
    CHECK(rows[1].n == 1500);
    for (const auto& row : rows) {
        CHECK(row.records == 24);
        REQUIRE(row.algorithms.size() == 3);
        for (const auto& a : row.algorithms) {
            CHECK(a.runs == 24);
            CHECK(a.rate == doctest::Approx(double(a.delivered) / a.runs));
            const auto [lo, hi] = wilson_interval(a.delivered, a.runs);
            CHECK(a.ci_lo == lo);
            CHECK(a.ci_hi == hi);
        }
        CHECK(row.algorithms[1].delivered == row.algorithms[1].runs_same_component);
    }
    std::ostringstream out;
    write_summary(out, rows);
    CHECK(out.str().rfind(std::string(kSummarySchema) + "\n", 0) == 0);
}

TEST_CASE("fixed endpoints") {
    const auto cfg = base("pair_selection = fixed\nd = 2\nsource_weight = 5\ntarget_weight = 3\n"
                          "source_position = 0.1, 0.1\ntarget_position = 0.6, 0.6\n");
    const auto records = run_experiment(cfg);
    CHECK(records.size() == 6);
    for (const auto& r : records) {
        CHECK(r.pair == 0);
        CHECK(r.w_s == 5);
        CHECK(r.w_t == 3);
        CHECK(r.s == r.n_realized - 2);
        CHECK(r.t == r.n_realized - 1);
        CHECK(r.phi_s == doctest::Approx(5.0 / (1.5 * 1500 * 0.25)));
    }
}

TEST_CASE("w_min sweep") {
    auto cfg = base("ep3 = true\nsweep_wmin = 0.5, 3\n");
    cfg.trials = 60;
    cfg.pairs_per_graph = 1;
    cfg.algorithms = {true, false, false};
    const auto curve = sweep_wmin(cfg);
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.points[0].x == 0.5);
    CHECK(curve.points[1].x == 3);
    for (const auto& p : curve.points) {
        CHECK(p.trials == 60);
        CHECK(p.y == doctest::Approx(double(p.failures) / 60));
        CHECK(p.ci_lo <= p.y);
        CHECK(p.ci_hi >= p.y);
    }
    CHECK(curve.points[1].y < curve.points[0].y);
    CHECK(curve.decreasing_steps == 1);
    std::ostringstream out;
    write_plot_data(out, curve.points);
    CHECK(out.str().rfind(std::string(kPlotSchema) + "\nx,y,ci_lo,ci_hi\n", 0) == 0);

    auto single = cfg;
    single.sweep_wmin = {2};
    CHECK(sweep_wmin(single).points.size() == 1);
    CHECK(sweep_wmin(single).decreasing_steps == 0);

    auto no_ep3 = cfg;
    no_ep3.model.ep3 = false;
    CHECK_THROWS_AS(sweep_wmin(no_ep3), ConfigError);
    auto empty = cfg;
    empty.sweep_wmin.clear();
    CHECK_THROWS_AS(sweep_wmin(empty), ConfigError);
    auto no_greedy = cfg;
    no_greedy.algorithms = {false, true, false};
    CHECK_THROWS_AS(sweep_wmin(no_greedy), ConfigError);
}

TEST_CASE("hyperbolic experiment") {
    const auto cfg = parse_experiment_config(
        "model = hyperbolic\nn = 800\nalpha_h = 0.75\nc_h = 0\nobjective = phi-h\ntrials = 3\npairs_per_graph = 5\n"
        "algorithms = greedy, patch\n");
    const auto records = run_experiment(cfg);
    CHECK(records.size() == 15);
    for (const auto& r : records) {
        CHECK(r.n_realized == 800);
        CHECK(r.beta == doctest::Approx(2.5));
        CHECK((*r.patch_status == PatchStatus::Delivered) == r.same_component);
    }
}

}

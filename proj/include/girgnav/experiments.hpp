#pragma once

#include <girgnav/config.hpp>
#include <girgnav/patching.hpp>
#include <girgnav/routing.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace girgnav {

inline constexpr const char* kTrialsSchema = "#schema=girgnav-trials/1";
inline constexpr const char* kSummarySchema = "#schema=girgnav-summary/1";
inline constexpr const char* kPlotSchema = "#schema=girgnav-plot/1";

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t pair = 0;
    double n = 0.0;     ///< configured intensity
    double wmin = 0.0;  ///< configured minimum weight (embedded value for hyperbolic runs)
    double beta = 0.0;
    std::uint64_t n_realized = 0;
    VertexId s = 0;
    VertexId t = 0;
    double w_s = 0.0;
    double w_t = 0.0;
    double phi_s = 0.0;
    bool same_component = false;
    std::optional<std::uint32_t> bfs;
    std::optional<RouteStatus> greedy_status;
    std::optional<std::uint64_t> greedy_steps;
    std::optional<PatchStatus> patch_status;
    std::optional<std::uint64_t> patch_steps;
    std::optional<PatchStatus> patch_history_status;
    std::optional<std::uint64_t> patch_history_steps;
    std::optional<double> stretch;  ///< greedy steps / bfs when greedy delivered and bfs >= 1
    std::optional<double> yardstick;
    std::optional<double> yardstick_refined;

    bool operator==(const TrialRecord&) const = default;
};

/// One graph per (grid point, trial) and pairs_per_graph pairs on each graph.
/// Records are ordered by grid point, then trial, then pair, independent of
/// the number of worker threads.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
/// Throws IoError on a missing schema row or malformed fields.
std::vector<TrialRecord> read_trials_csv(std::istream& in);

struct AlgorithmSummary {
    std::string algorithm;
    std::uint64_t runs = 0;
    std::uint64_t delivered = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t runs_same_component = 0;
    std::uint64_t delivered_same_component = 0;
    std::optional<double> mean_steps;    ///< over deliveries
    std::optional<double> median_steps;  ///< over deliveries
};

struct SummaryRow {
    double n = 0.0;
    double wmin = 0.0;
    double beta = 0.0;
    std::uint64_t records = 0;
    std::vector<AlgorithmSummary> algorithms;
    std::optional<double> mean_stretch;
    std::optional<double> median_stretch;
    std::optional<double> yardstick;
    std::optional<double> mean_refined_yardstick;
};

/// One row per (n, wmin, beta) in order of first appearance.
/// Throws InvalidInput on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
};

struct FailureCurve {
    std::vector<CurvePoint> points;      ///< x = wmin, y = greedy failure rate
    std::size_t decreasing_steps = 0;    ///< consecutive pairs with strictly lower rate
    std::optional<double> log_slope;     ///< slope of ln(rate) against wmin over nonzero rates
};

/// Greedy failure rate for each w_min of cfg.sweep_wmin.
/// Throws ConfigError unless the model is a GIRG with ep3 enabled and a nonempty grid.
FailureCurve sweep_wmin(const ExperimentConfig& cfg);
FailureCurve failure_curve(const std::vector<TrialRecord>& records);

void write_plot_data(std::ostream& out, const std::vector<CurvePoint>& points);

} // namespace girgnav

#pragma once

#include <girgnav/hyperbolic.hpp>
#include <girgnav/model.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace girgnav {

/// Flat `key = value` file. Blank lines and lines starting with '#' are
/// ignored; keys may appear at most once. Throws ConfigError on syntax errors.
std::map<std::string, std::string> parse_key_values(std::string_view text);

enum class ModelKind { Girg, Hyperbolic };
enum class PairSelection { Random, Fixed };
enum class ObjectiveChoice { Phi, PhiRelaxed, PhiHyperbolic };

struct FixedEndpoints {
    double source_weight = 1.0;
    double target_weight = 1.0;
    std::vector<double> source_position;
    std::vector<double> target_position;
};

struct ObjectiveSpec {
    ObjectiveChoice kind = ObjectiveChoice::Phi;
    std::pair<double, double> band{1.0, 1.0};
    std::optional<double> exponent;  ///< constant g(n); the default vanishing function when unset
    bool weak = false;
    double delta = 0.2;
    std::uint64_t seed = 0;
};

struct Algorithms {
    bool greedy = true;
    bool patch = false;
    bool patch_history = false;
};

struct ExperimentConfig {
    ModelKind model_kind = ModelKind::Girg;
    ModelParams model;
    HyperbolicParams hyperbolic;
    std::uint64_t trials = 1;
    std::uint64_t pairs_per_graph = 1;
    PairSelection pair_selection = PairSelection::Random;
    FixedEndpoints fixed;
    ObjectiveSpec objective;
    Algorithms algorithms;
    std::vector<double> sweep_wmin;
    std::vector<double> sweep_n;
    std::uint64_t master_seed = 1;
    std::uint64_t greedy_step_limit = 0;  ///< 0 selects the default
    std::uint64_t patch_step_limit = 0;   ///< 0 selects the default
    unsigned threads = 0;                 ///< 0 selects all available

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Builds and validates a config from key-value text. Unknown keys are errors.
ExperimentConfig parse_experiment_config(std::string_view text);

/// Throws IoError if the file cannot be read, ConfigError if it is invalid.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Worker count: the requested count (all hardware threads when 0), capped
/// by GIRG_NAV_THREADS when set. Throws ConfigError on a malformed variable.
unsigned resolve_threads(unsigned requested);

} // namespace girgnav

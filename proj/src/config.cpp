#include <girgnav/config.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace girgnav {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, std::string_view value) {
    const std::string v(value);
    if (v == "inf" || v == "infinity") return kInfinity;
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || std::isnan(x))
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return x;
}

std::uint64_t to_uint(const std::string& key, std::string_view value) {
    const std::string v(value);
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split_list(std::string_view v) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = v.find(',');
        out.push_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> to_reals(const std::string& key, std::string_view v) {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(to_real(key, item));
    return out;
}

} // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, value).second) throw ConfigError(key + ": duplicate key");
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (model_kind == ModelKind::Girg) {
        try {
            model.validate();
        } catch (const InvalidInput& e) {
            throw ConfigError(e.what());
        }
        for (double w : sweep_wmin)
            if (!(w > 0.0)) throw ConfigError("sweep_wmin: values must be positive");
        if (pair_selection == PairSelection::Fixed) {
            const auto d = static_cast<std::size_t>(model.d);
            if (fixed.source_position.size() != d) throw ConfigError("source_position: needs d coordinates");
            if (fixed.target_position.size() != d) throw ConfigError("target_position: needs d coordinates");
            for (double x : fixed.source_position)
                if (!(x >= 0.0 && x < 1.0)) throw ConfigError("source_position: coordinates must lie in [0, 1)");
            for (double x : fixed.target_position)
                if (!(x >= 0.0 && x < 1.0)) throw ConfigError("target_position: coordinates must lie in [0, 1)");
            if (!(fixed.source_weight >= model.w_min)) throw ConfigError("source_weight: must be at least w_min");
            if (!(fixed.target_weight >= model.w_min)) throw ConfigError("target_weight: must be at least w_min");
        }
        if (objective.kind == ObjectiveChoice::PhiHyperbolic)
            throw ConfigError("objective: phi-h requires model = hyperbolic");
    } else {
        try {
            hyperbolic.validate();
            embedded_params(hyperbolic);
        } catch (const InvalidInput& e) {
            throw ConfigError(e.what());
        }
        if (!sweep_wmin.empty()) throw ConfigError("sweep_wmin: not available for hyperbolic models");
        if (pair_selection == PairSelection::Fixed)
            throw ConfigError("pair_selection: fixed endpoints need model = girg");
    }
    for (double n : sweep_n) {
        if (!(n >= 1.0)) throw ConfigError("sweep_n: values must be at least 1");
        if (model_kind == ModelKind::Hyperbolic && n != std::floor(n))
            throw ConfigError("sweep_n: hyperbolic sizes must be integers");
    }
    if (pairs_per_graph == 0) throw ConfigError("pairs_per_graph: must be at least 1");
    if (objective.kind == ObjectiveChoice::PhiRelaxed) {
        const auto [lo, hi] = objective.band;
        if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("relax_band: needs 0 < lo <= hi");
        if (objective.exponent && !(*objective.exponent >= 0.0 && *objective.exponent < 1.0))
            throw ConfigError("relax_exponent: must lie in [0, 1)");
        if (!(objective.delta > 0.0)) throw ConfigError("relax_delta: must be positive");
    }
    if (!algorithms.greedy && !algorithms.patch && !algorithms.patch_history)
        throw ConfigError("algorithms: at least one algorithm required");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : parse_key_values(text)) {
        if (key == "model") {
            if (value == "girg") cfg.model_kind = ModelKind::Girg;
            else if (value == "hyperbolic") cfg.model_kind = ModelKind::Hyperbolic;
            else throw ConfigError("model: expected girg or hyperbolic");
        } else if (key == "n") {
            cfg.model.n = to_real(key, value);
            const double n = cfg.model.n;
            if (!(n >= 1.0) || n != std::floor(n) || n > 1e15) {
                cfg.hyperbolic.n = 0;
            } else {
                cfg.hyperbolic.n = static_cast<std::uint64_t>(n);
            }
        } else if (key == "d") {
            cfg.model.d = static_cast<int>(std::min<std::uint64_t>(to_uint(key, value), 1u << 20));
        } else if (key == "beta") {
            cfg.model.beta = to_real(key, value);
        } else if (key == "w_min") {
            cfg.model.w_min = to_real(key, value);
        } else if (key == "alpha") {
            cfg.model.alpha = to_real(key, value);
        } else if (key == "kernel_c") {
            cfg.model.kernel_c = to_real(key, value);
        } else if (key == "c1") {
            cfg.model.c1 = to_real(key, value);
        } else if (key == "c2") {
            cfg.model.c2 = to_real(key, value);
        } else if (key == "ep3") {
            cfg.model.ep3 = to_bool(key, value);
        } else if (key == "seed") {
            cfg.model.seed = cfg.hyperbolic.seed = to_uint(key, value);
        } else if (key == "alpha_h") {
            cfg.hyperbolic.alpha_h = to_real(key, value);
        } else if (key == "c_h") {
            cfg.hyperbolic.c_h = to_real(key, value);
        } else if (key == "t_h") {
            cfg.hyperbolic.t_h = to_real(key, value);
        } else if (key == "trials") {
            cfg.trials = to_uint(key, value);
        } else if (key == "pairs_per_graph") {
            cfg.pairs_per_graph = to_uint(key, value);
        } else if (key == "pair_selection") {
            if (value == "random") cfg.pair_selection = PairSelection::Random;
            else if (value == "fixed") cfg.pair_selection = PairSelection::Fixed;
            else throw ConfigError("pair_selection: expected random or fixed");
        } else if (key == "source_weight") {
            cfg.fixed.source_weight = to_real(key, value);
        } else if (key == "target_weight") {
            cfg.fixed.target_weight = to_real(key, value);
        } else if (key == "source_position") {
            cfg.fixed.source_position = to_reals(key, value);
        } else if (key == "target_position") {
            cfg.fixed.target_position = to_reals(key, value);
        } else if (key == "objective") {
            if (value == "phi") cfg.objective.kind = ObjectiveChoice::Phi;
            else if (value == "phi-relaxed") cfg.objective.kind = ObjectiveChoice::PhiRelaxed;
            else if (value == "phi-h") cfg.objective.kind = ObjectiveChoice::PhiHyperbolic;
            else throw ConfigError("objective: expected phi, phi-relaxed or phi-h");
        } else if (key == "relax_band") {
            const auto band = to_reals(key, value);
            if (band.size() != 2) throw ConfigError("relax_band: expected two values lo, hi");
            cfg.objective.band = {band[0], band[1]};
        } else if (key == "relax_exponent") {
            cfg.objective.exponent = to_real(key, value);
        } else if (key == "relax_weak") {
            cfg.objective.weak = to_bool(key, value);
        } else if (key == "relax_delta") {
            cfg.objective.delta = to_real(key, value);
        } else if (key == "relax_seed") {
            cfg.objective.seed = to_uint(key, value);
        } else if (key == "algorithms") {
            cfg.algorithms = {false, false, false};
            for (auto a : split_list(value)) {
                if (a == "greedy") cfg.algorithms.greedy = true;
                else if (a == "patch") cfg.algorithms.patch = true;
                else if (a == "patch-history") cfg.algorithms.patch_history = true;
                else throw ConfigError("algorithms: unknown algorithm '" + std::string(a) + "'");
            }
        } else if (key == "sweep_wmin") {
            cfg.sweep_wmin = to_reals(key, value);
        } else if (key == "sweep_n") {
            cfg.sweep_n = to_reals(key, value);
        } else if (key == "master_seed") {
            cfg.master_seed = to_uint(key, value);
        } else if (key == "greedy_step_limit") {
            cfg.greedy_step_limit = to_uint(key, value);
        } else if (key == "patch_step_limit") {
            cfg.patch_step_limit = to_uint(key, value);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(std::min<std::uint64_t>(to_uint(key, value), 4096));
        } else {
            throw ConfigError(key + ": unknown key");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file " + path.string());
    return parse_experiment_config(buf.str());
}

unsigned resolve_threads(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GIRG_NAV_THREADS"); env && *env) {
        const std::uint64_t cap = to_uint("GIRG_NAV_THREADS", env);
        if (cap == 0) throw ConfigError("GIRG_NAV_THREADS: must be at least 1");
        n = static_cast<unsigned>(std::min<std::uint64_t>(n, cap));
    }
    return std::max(1u, n);
}

} // namespace girgnav

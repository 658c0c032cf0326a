#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "prudentia/arrangements.hpp"
#include "prudentia/axioms.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/io.hpp"

namespace prudentia {

enum class OutputFormat { Json, Text };

struct RunConfig {
    std::uint64_t seed = 20240601;
    long grid_max_entry = 3;
    long grid_max_denominator = 4;
    std::size_t random_samples = 200;
    std::size_t combination_samples = 500;
    long archimedean_k_max = 4096;
    Budget budget;
    OutputFormat format = OutputFormat::Json;
    std::string free_label = kDefaultFreeLabel;

    SampleConfig sample() const {
        SampleConfig s;
        s.max_entry = grid_max_entry;
        s.max_denominator = grid_max_denominator;
        s.random_count = random_samples;
        s.seed = seed;
        return s;
    }

    void validate() const {
        if (budget.max_dim == 0 || budget.max_hyperplanes == 0) throw PreconditionViolated("budgets must be positive");
        if (grid_max_entry < 1 || grid_max_denominator < 1) throw PreconditionViolated("grid bounds must be positive");
        if (archimedean_k_max < 1) throw PreconditionViolated("archimedean budget must be positive");
    }
};

/// Overlays the keys present in `j` onto `cfg`; unknown keys are rejected.
inline void apply_config_json(RunConfig& cfg, const io::json& j) {
    if (!j.is_object()) throw ParseError("configuration must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "grid_max_entry") cfg.grid_max_entry = value.get<long>();
        else if (key == "grid_max_denominator") cfg.grid_max_denominator = value.get<long>();
        else if (key == "random_samples") cfg.random_samples = value.get<std::size_t>();
        else if (key == "combination_samples") cfg.combination_samples = value.get<std::size_t>();
        else if (key == "archimedean_k_max") cfg.archimedean_k_max = value.get<long>();
        else if (key == "max_dim") cfg.budget.max_dim = value.get<std::size_t>();
        else if (key == "max_hyperplanes") cfg.budget.max_hyperplanes = value.get<std::size_t>();
        else if (key == "format") {
            const auto f = value.get<std::string>();
            if (f != "json" && f != "text") throw ParseError("format must be json or text");
            cfg.format = f == "json" ? OutputFormat::Json : OutputFormat::Text;
        } else if (key == "free_label") cfg.free_label = value.get<std::string>();
        else if (key == "schema") continue;
        else throw ParseError("unknown configuration key \"" + key + "\"");
    }
}

/// Defaults overlaid by the file named in PRUDENTIA_CONFIG, if set. Flags are applied later by the CLI.
inline RunConfig load_config_from_env() {
    RunConfig cfg;
    if (const char* path = std::getenv("PRUDENTIA_CONFIG"); path && *path) {
        try {
            apply_config_json(cfg, io::read_file(path));
        } catch (const io::json::exception& e) {
            throw ParseError(std::string("bad configuration in '") + path + "': " + e.what());
        }
    }
    return cfg;
}

}  // namespace prudentia

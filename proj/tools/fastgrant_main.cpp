#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "fastgrant/experiments.hpp"

namespace {

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

fastgrant::ScenarioConfig resolve_config(const std::string& config_path,
                                         const std::vector<std::string>& overrides,
                                         const CLI::Option* seed_opt, std::uint64_t seed) {
    fastgrant::ScenarioConfig cfg;
    if (!config_path.empty()) {
        cfg = fastgrant::load_config_file(config_path);
    }
    for (const std::string& pair : overrides) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            throw fastgrant::ConfigError("--set expects key=value, got: " + pair);
        }
        fastgrant::apply_override(cfg, pair.substr(0, eq), pair.substr(eq + 1));
    }
    if (seed_opt->count() > 0) {
        cfg.rng_seed = seed;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fastgrant: fast uplink grant scheduling simulator with NOMA pairing"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run a named experiment and write CSV outputs");
    std::string experiment;
    std::string config_path;
    std::uint64_t seed = 0;
    int reps = 1;
    int jobs = default_jobs();
    std::string out_dir = "results";
    std::vector<std::string> overrides;
    run_cmd->add_option("experiment", experiment, "experiment name (see 'list')")->required();
    run_cmd->add_option("--config", config_path, "config file (key = value lines)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "override the RNG seed");
    run_cmd->add_option("--reps", reps, "number of replications")->check(CLI::PositiveNumber);
    run_cmd->add_option("--jobs", jobs, "replication worker pool size")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--set", overrides, "extra key=value config overrides");

    auto* list_cmd = app.add_subcommand("list", "print the registered experiments");

    auto* validate_cmd = app.add_subcommand("validate", "check a config file's invariants");
    std::string validate_path;
    validate_cmd->add_option("--config", validate_path, "config file to check")->required();

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        for (const auto& spec : fastgrant::experiment_registry()) {
            std::printf("%-18s %s\n", spec.name.c_str(), spec.description.c_str());
        }
        return 0;
    }

    if (validate_cmd->parsed()) {
        try {
            const fastgrant::ScenarioConfig cfg = fastgrant::load_config_file(validate_path);
            const auto violations = cfg.violations();
            if (!violations.empty()) {
                std::fprintf(stderr, "invalid configuration:\n");
                for (const auto& v : violations) {
                    std::fprintf(stderr, "  - %s\n", v.c_str());
                }
                return 3;
            }
        } catch (const fastgrant::ConfigError& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return 3;
        }
        std::fprintf(stderr, "%s: ok\n", validate_path.c_str());
        return 0;
    }

    // run
    if (!fastgrant::find_experiment(experiment)) {
        std::fprintf(stderr, "unknown experiment '%s'; try 'fastgrant list'\n",
                     experiment.c_str());
        return 2;
    }
    try {
        fastgrant::RunOptions options;
        options.cfg = resolve_config(config_path, overrides, seed_opt, seed);
        options.cfg.validate();
        options.replications = reps;
        options.jobs = jobs;
        options.output_dir = out_dir;
        std::fprintf(stderr, "running %s: %d replication(s), seed %llu, %d job(s)\n",
                     experiment.c_str(), reps,
                     static_cast<unsigned long long>(options.cfg.rng_seed), jobs);
        const auto files = fastgrant::run_named_experiment(experiment, options);
        std::fprintf(stderr, "wrote %zu files under %s/%s\n", files.size(), out_dir.c_str(),
                     experiment.c_str());
    } catch (const fastgrant::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

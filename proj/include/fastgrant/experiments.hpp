#pragma once

#include <string>
#include <vector>

#include "fastgrant/simulation.hpp"

namespace fastgrant {

struct ExperimentSpec {
    std::string name;
    std::string description;
    std::vector<Variant> variants;
    bool sweeps_prediction_error = false;
    bool forces_mode_switch = false;
};

const std::vector<ExperimentSpec>& experiment_registry();
const ExperimentSpec* find_experiment(const std::string& name);

struct RunOptions {
    ScenarioConfig cfg;
    int replications = 1;
    int jobs = 1;
    std::string output_dir = "results";
};

// Runs the named experiment and writes its CSVs plus a manifest under
// <output_dir>/<name>/. Returns the written file paths, sorted.
std::vector<std::string> run_named_experiment(const std::string& name,
                                              const RunOptions& options);

// Writers are exposed for reuse; every float is emitted as %.17g so repeated
// runs with the same seed produce byte-identical files.
std::vector<std::string> write_experiment_outputs(const ExperimentResult& result,
                                                  const std::string& directory);
void write_manifest(const ExperimentResult& result, const std::string& experiment,
                    const std::string& path);

}  // namespace fastgrant

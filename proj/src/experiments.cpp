#include "fastgrant/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fastgrant {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
    written.push_back(path);
}

void write_series(const std::string& path, const std::vector<double>& series,
                  std::vector<std::string>& written) {
    std::ostringstream out;
    out << "cycle,value\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        out << t << ',' << fmt(series[t]) << '\n';
    }
    write_file(path, out.str(), written);
}

}  // namespace

const std::vector<ExperimentSpec>& experiment_registry() {
    static const std::vector<ExperimentSpec> registry = {
        {"table2",
         "missing ratio, winners and delay metrics for OMA and NOMA",
         {Variant::OmaMab, Variant::NomaMab, Variant::BestOma},
         false,
         false},
        {"reward-curves",
         "cumulative reward and regret of the oracle, OMA and NOMA schedulers",
         {Variant::BestOma, Variant::OmaMab, Variant::NomaMab},
         false,
         false},
        {"waste-curves",
         "cumulative wasted resource blocks for OMA and NOMA",
         {Variant::OmaMab, Variant::NomaMab},
         false,
         false},
        {"pred-error-sweep",
         "waste and reward under average prediction errors 0.01, 0.1 and 0.4",
         {Variant::OmaMab, Variant::NomaMab},
         true,
         false},
        {"mode-switch",
         "NOMA with the pairing mode switch, plus its coupled switch-off counterfactual",
         {Variant::NomaMab},
         false,
         true},
        {"quasi-optimal",
         "random pairing versus optimal pairing with oracle or learned cluster heads",
         {Variant::BestOma, Variant::NomaMab, Variant::QuasiMab, Variant::QuasiBest},
         false,
         false},
    };
    return registry;
}

const ExperimentSpec* find_experiment(const std::string& name) {
    for (const auto& spec : experiment_registry()) {
        if (spec.name == name) {
            return &spec;
        }
    }
    return nullptr;
}

std::vector<std::string> write_experiment_outputs(const ExperimentResult& result,
                                                  const std::string& directory) {
    std::filesystem::create_directories(directory);
    std::vector<std::string> written;

    std::ostringstream summary;
    summary << "system,missing_ratio,winners,avg_max_delay,avg_access_delay\n";
    for (const VariantSummary& v : result.variants) {
        summary << v.name << ',' << fmt(v.missing_ratio) << ',' << fmt(v.winners) << ','
                << fmt(v.avg_max_delay) << ',' << fmt(v.avg_access_delay) << '\n';
    }
    write_file(directory + "/summary.csv", summary.str(), written);

    for (const VariantSummary& v : result.variants) {
        write_series(directory + "/" + v.name + "_cumulative_reward.csv", v.cum_reward,
                     written);
        write_series(directory + "/" + v.name + "_cumulative_regret.csv", v.cum_regret,
                     written);
        write_series(directory + "/" + v.name + "_cumulative_waste.csv", v.cum_waste,
                     written);
        if (v.has_ms_shadow) {
            write_series(directory + "/" + v.name + "_ms_off_cumulative_reward.csv",
                         v.ms_off_cum_reward, written);
            write_series(directory + "/" + v.name + "_ms_off_cumulative_waste.csv",
                         v.ms_off_cum_waste, written);
        }

        std::ostringstream hist;
        hist << "device_id,qos_class,count\n";
        const int n_strict = (result.cfg.n_devices + 1) / 2;
        for (std::size_t id = 0; id < v.histogram.size(); ++id) {
            hist << id << ',' << (static_cast<int>(id) < n_strict ? "strict" : "relaxed")
                 << ',' << fmt(v.histogram[id]) << '\n';
        }
        write_file(directory + "/" + v.name + "_schedule_histogram.csv", hist.str(), written);
    }

    write_series(directory + "/prediction_error.csv", result.realized_error, written);
    return written;
}

void write_manifest(const ExperimentResult& result, const std::string& experiment,
                    const std::string& path) {
    std::ostringstream out;
    out << "# run manifest: every value below reproduces this output directory\n";
    out << "# experiment = " << experiment << "\n";
    out << "# replications = " << result.replications << "\n";
    out << "# regenerate: fastgrant run " << experiment << " --config <this file> --reps "
        << result.replications << "\n";
    out << config_to_text(result.cfg);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
    file << out.str();
}

std::vector<std::string> run_named_experiment(const std::string& name,
                                              const RunOptions& options) {
    const ExperimentSpec* spec = find_experiment(name);
    if (!spec) {
        throw std::invalid_argument("unknown experiment: " + name);
    }
    ScenarioConfig cfg = options.cfg;
    if (spec->forces_mode_switch) {
        cfg.mode_switch_enabled = true;
    }
    cfg.validate();

    const std::string base = options.output_dir + "/" + name;
    std::filesystem::create_directories(base);
    std::vector<std::string> written;

    if (spec->sweeps_prediction_error) {
        const std::vector<double> error_means = {0.01, 0.1, 0.4};
        const std::vector<ExperimentResult> results = sweep_prediction_error(
            cfg, error_means, options.replications, spec->variants, options.jobs);
        std::ostringstream sweep_summary;
        sweep_summary << "pred_err_mean,system,missing_ratio,winners,total_reward,"
                         "wasted_total\n";
        for (std::size_t k = 0; k < results.size(); ++k) {
            char sub[32];
            std::snprintf(sub, sizeof(sub), "ep_%g", error_means[k]);
            const std::string dir = base + "/" + sub;
            auto files = write_experiment_outputs(results[k], dir);
            written.insert(written.end(), files.begin(), files.end());
            write_manifest(results[k], name, dir + "/manifest.txt");
            written.push_back(dir + "/manifest.txt");
            for (const VariantSummary& v : results[k].variants) {
                sweep_summary << fmt(error_means[k]) << ',' << v.name << ','
                              << fmt(v.missing_ratio) << ',' << fmt(v.winners) << ','
                              << fmt(v.total_reward) << ',' << fmt(v.wasted_total) << '\n';
            }
        }
        std::ofstream out(base + "/sweep_summary.csv", std::ios::binary);
        out << sweep_summary.str();
        written.push_back(base + "/sweep_summary.csv");
    } else {
        const ExperimentResult result =
            run_experiment(cfg, options.replications, spec->variants, options.jobs);
        written = write_experiment_outputs(result, base);
        write_manifest(result, name, base + "/manifest.txt");
        written.push_back(base + "/manifest.txt");
    }
    std::sort(written.begin(), written.end());
    return written;
}

}  // namespace fastgrant

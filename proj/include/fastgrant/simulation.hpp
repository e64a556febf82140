#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fastgrant/bandit.hpp"
#include "fastgrant/channel.hpp"
#include "fastgrant/config.hpp"
#include "fastgrant/matching.hpp"
#include "fastgrant/pairing.hpp"
#include "fastgrant/population.hpp"
#include "fastgrant/predictor.hpp"
#include "fastgrant/reward.hpp"
#include "fastgrant/traffic.hpp"

namespace fastgrant {

enum class Variant {
    OmaMab,     // UCB fast grant, one device per RB
    NomaMab,    // UCB fast grant + distributed random NOMA pairing
    BestOma,    // oracle: highest-reward actives, one per RB (regret reference)
    QuasiBest,  // oracle CHs + optimal pairing via max-weight matching
    QuasiMab,   // UCB CHs + optimal pairing via max-weight matching
};

const char* variant_name(Variant v);

struct CycleLog {
    long cycle = 0;
    double realized_error = 0.0;
    std::vector<double> reward_sum;        // per variant, CH + partner rewards
    std::vector<int> wasted_rbs;           // per variant
    std::vector<double> regret_increment;  // best-reference reward minus own
    std::vector<std::vector<int>> served_ids;
};

// Per-variant results of one run (or the mean over replications). Violation
// counters are summed, everything else averaged, when aggregating.
struct VariantSummary {
    Variant kind = Variant::OmaMab;
    std::string name;
    double missing_ratio = 0.0;       // wasted / (M * T)
    double winners = 0.0;             // served transmissions
    double avg_max_delay = 0.0;       // mean D_i over served transmissions
    double avg_access_delay = 0.0;    // mean d_i over served transmissions
    double total_reward = 0.0;
    double final_regret = 0.0;
    double wasted_total = 0.0;
    double grants_total = 0.0;
    double drops_total = 0.0;
    double outside_prediction = 0.0;       // scheduler picks outside the predicted set
    double ms_coupling_violations = 0.0;   // cycles where waste(on) > waste(off)
    std::vector<double> histogram;         // times each device was scheduled
    std::vector<double> cum_reward;        // per cycle
    std::vector<double> cum_regret;
    std::vector<double> cum_waste;
    bool has_ms_shadow = false;            // NOMA with mode switch enabled
    std::vector<double> ms_off_cum_reward; // round-1-only counterfactual
    std::vector<double> ms_off_cum_waste;
};

struct RunResult {
    std::vector<VariantSummary> variants;
    std::vector<double> realized_error;  // per cycle
};

// One seeded replication. All variants see identical traffic, channel and
// predictor randomness; only scheduler-internal draws (tie breaks, partner
// picks) come from per-variant streams.
class SimulationRun {
  public:
    SimulationRun(const ScenarioConfig& cfg, std::uint64_t seed,
                  std::vector<Variant> variants);
    ~SimulationRun();

    const CycleLog& step();
    long cycle() const;
    RunResult finish() const;

    const std::vector<MtdProfile>& population() const;
    const BanditState* bandit(Variant kind) const;  // nullptr for oracle variants

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

RunResult run_replication(const ScenarioConfig& cfg, std::uint64_t seed,
                          const std::vector<Variant>& variants);

struct ExperimentResult {
    ScenarioConfig cfg;
    int replications = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<VariantSummary> variants;  // aggregated over replications
    std::vector<double> realized_error;
};

ExperimentResult run_experiment(const ScenarioConfig& cfg, int replications,
                                const std::vector<Variant>& variants, int jobs = 1);

// One full experiment per error level on identical replication seeds.
std::vector<ExperimentResult> sweep_prediction_error(const ScenarioConfig& cfg,
                                                     const std::vector<double>& error_means,
                                                     int replications,
                                                     const std::vector<Variant>& variants,
                                                     int jobs = 1);

}  // namespace fastgrant

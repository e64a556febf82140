#include "fastgrant/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fastgrant {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::OmaMab:
            return "oma_mab";
        case Variant::NomaMab:
            return "noma_mab";
        case Variant::BestOma:
            return "best_oma";
        case Variant::QuasiBest:
            return "quasi_best";
        case Variant::QuasiMab:
            return "quasi_mab";
    }
    return "unknown";
}

namespace {

bool is_mab(Variant v) {
    return v == Variant::OmaMab || v == Variant::NomaMab || v == Variant::QuasiMab;
}

struct PerVariant {
    Variant kind;
    std::string name;
    TrafficState traffic;
    BanditState bandit;
    RngStream tiebreak;
    RngStream pairing;

    double cum_reward = 0.0;
    double cum_regret = 0.0;
    long cum_waste = 0;
    long grants = 0;
    long winners = 0;
    double sum_max_delay = 0.0;
    double sum_access_delay = 0.0;
    long outside_prediction = 0;
    long ms_violations = 0;
    double shadow_cum_reward = 0.0;
    long shadow_cum_waste = 0;
    std::vector<double> histogram;
    std::vector<double> reward_series;
    std::vector<double> regret_series;
    std::vector<double> waste_series;
    std::vector<double> shadow_reward_series;
    std::vector<double> shadow_waste_series;

    PerVariant(Variant v, const std::vector<MtdProfile>& population, std::uint64_t seed)
        : kind(v),
          name(variant_name(v)),
          traffic(population),
          bandit(static_cast<int>(population.size())),
          tiebreak(derive_stream(seed, std::string("tiebreak/") + variant_name(v))),
          pairing(derive_stream(seed, std::string("pairing/") + variant_name(v))),
          histogram(population.size(), 0.0) {}
};

}  // namespace

struct SimulationRun::Impl {
    ScenarioConfig cfg;
    RewardParams reward_params;
    PairingParams pairing_params;
    double p_tx_w;
    double sic_gap;  // P_tol / P_t in linear units
    std::vector<MtdProfile> population;
    ActivationSchedule schedule;
    ChannelModel channel;
    RngStream traffic_stream;
    RngStream channel_stream;
    RngStream predictor_stream;
    std::vector<PerVariant> variants;
    long cycle = 0;
    CycleLog log;

    Impl(const ScenarioConfig& config, std::uint64_t seed, std::vector<Variant> kinds)
        : cfg(config),
          reward_params(RewardParams::from_config(config)),
          pairing_params(PairingParams::from_config(config)),
          p_tx_w(dbm_to_watts(config.tx_power_dbm)),
          sic_gap(dbm_to_watts(config.sic_tolerance_dbm) / dbm_to_watts(config.tx_power_dbm)),
          population([&] {
              RngStream s = derive_stream(seed, "population");
              return build_population(config, s);
          }()),
          schedule([&] {
              RngStream s = derive_stream(seed, "activation");
              return build_activation_schedule(config, s);
          }()),
          channel(config, population),
          traffic_stream(derive_stream(seed, "traffic")),
          channel_stream(derive_stream(seed, "channel")),
          predictor_stream(derive_stream(seed, "predictor")) {
        for (Variant v : kinds) {
            variants.emplace_back(v, population, seed);
        }
        log.reward_sum.resize(variants.size());
        log.wasted_rbs.resize(variants.size());
        log.regret_increment.resize(variants.size());
        log.served_ids.resize(variants.size());
    }

    double standalone_reward(const PerVariant& v, int id, const std::vector<double>& gains) const {
        const Packet& packet = v.traffic.packet(id);
        QosSample sample;
        sample.value_of_info = packet.value_of_info;
        sample.rate_bps = oma_rate(p_tx_w, gains[id], cfg.bandwidth_hz);
        sample.max_delay = population[id].max_delay_cycles;
        sample.access_delay = access_delay(packet, cycle);
        sample.min_rate_bps = population[id].min_rate_bps;
        return reward(sample, reward_params);
    }

    void fill_thetas(PerVariant& v, std::vector<PairingOutcome>& outcomes) const {
        for (PairingOutcome& o : outcomes) {
            o.theta_ch = 0.0;
            o.theta_nch = 0.0;
            if (o.ch_was_active) {
                const Packet& packet = v.traffic.packet(o.ch_id);
                QosSample sample{packet.value_of_info, o.r_ch_bps,
                                 population[o.ch_id].max_delay_cycles,
                                 access_delay(packet, cycle),
                                 population[o.ch_id].min_rate_bps};
                o.theta_ch = reward(sample, reward_params);
            }
            if (o.nch_id) {
                const Packet& packet = v.traffic.packet(*o.nch_id);
                QosSample sample{packet.value_of_info, o.r_nch_bps,
                                 population[*o.nch_id].max_delay_cycles,
                                 access_delay(packet, cycle),
                                 population[*o.nch_id].min_rate_bps};
                o.theta_nch = reward(sample, reward_params);
            }
        }
    }

    // Serves, counts and banks one cycle's outcomes; returns the cycle reward.
    double process_outcomes(PerVariant& v, const std::vector<PairingOutcome>& outcomes,
                            std::vector<int>& served, int& wasted) {
        double cycle_reward = 0.0;
        wasted = 0;
        for (const PairingOutcome& o : outcomes) {
            ++v.grants;
            v.histogram[o.ch_id] += 1.0;
            cycle_reward += o.theta_ch + o.theta_nch;
            if (o.wasted) {
                ++wasted;
            }
            if (o.ch_was_active) {
                const Packet& packet = v.traffic.packet(o.ch_id);
                v.sum_max_delay += population[o.ch_id].max_delay_cycles;
                v.sum_access_delay += static_cast<double>(access_delay(packet, cycle));
                ++v.winners;
                served.push_back(o.ch_id);
            }
            if (o.nch_id) {
                ++v.grants;  // the partner shares the grant
                v.histogram[*o.nch_id] += 1.0;
                const Packet& packet = v.traffic.packet(*o.nch_id);
                v.sum_max_delay += population[*o.nch_id].max_delay_cycles;
                v.sum_access_delay += static_cast<double>(access_delay(packet, cycle));
                ++v.winners;
                served.push_back(*o.nch_id);
            }
        }
        for (int id : served) {
            v.traffic.serve(id);
        }
        v.cum_waste += wasted;
        v.cum_reward += cycle_reward;
        return cycle_reward;
    }

    std::vector<int> mab_select(PerVariant& v, const std::vector<int>& actives,
                                const PredictionDraws& pred_draws) {
        const PredictionSnapshot snapshot =
            apply_prediction(actives, pred_draws, cfg, cycle);
        v.bandit.note_predicted(snapshot.predicted_active);
        if (cfg.use_true_t_prime) {
            v.bandit.note_true_active(actives);
        }
        std::vector<int> heads = select_cluster_heads(snapshot.candidates(), v.bandit,
                                                      cfg.n_rbs, v.tiebreak,
                                                      cfg.use_true_t_prime);
        v.bandit.mark_selected(heads);
        for (int id : heads) {
            if (!std::binary_search(snapshot.predicted_active.begin(),
                                    snapshot.predicted_active.end(), id)) {
                ++v.outside_prediction;
            }
        }
        return heads;
    }

    std::vector<PairingOutcome> oma_outcomes(PerVariant& v, const std::vector<int>& heads,
                                             const std::vector<double>& gains) const {
        std::vector<PairingOutcome> outcomes(heads.size());
        for (std::size_t rb = 0; rb < heads.size(); ++rb) {
            PairingOutcome& o = outcomes[rb];
            o.rb_index = static_cast<int>(rb);
            o.ch_id = heads[rb];
            o.ch_was_active = v.traffic.is_active(heads[rb]);
            o.wasted = !o.ch_was_active;
            if (o.ch_was_active) {
                o.r_ch_bps = oma_rate(p_tx_w, gains[o.ch_id], cfg.bandwidth_hz);
            }
        }
        return outcomes;
    }

    std::vector<PairingOutcome> matched_outcomes(PerVariant& v, const std::vector<int>& heads,
                                                 const std::vector<int>& nchs,
                                                 const std::vector<double>& gains,
                                                 const std::vector<double>& theta_by_id) {
        MatchingInstance instance;
        instance.ch_ids = heads;
        instance.nch_ids = nchs;
        instance.weight.assign(heads.size(), std::vector<double>(nchs.size(), 0.0));
        instance.eligible.assign(heads.size(), std::vector<char>(nchs.size(), 0));
        for (std::size_t c = 0; c < heads.size(); ++c) {
            const double gamma_c = gains[heads[c]];
            const double theta_c =
                v.traffic.is_active(heads[c]) ? theta_by_id[heads[c]] : 0.0;
            for (std::size_t n = 0; n < nchs.size(); ++n) {
                if (std::abs(gains[nchs[n]] - gamma_c) >= sic_gap) {
                    instance.eligible[c][n] = 1;
                    instance.weight[c][n] = theta_c + theta_by_id[nchs[n]];
                }
            }
        }
        const Matching matching = optimal_pairing(instance);

        std::vector<int> partner(population.size(), -1);
        for (const auto& [ch, nch] : matching.pairs) {
            partner[ch] = nch;
        }
        std::vector<PairingOutcome> outcomes(heads.size());
        for (std::size_t rb = 0; rb < heads.size(); ++rb) {
            PairingOutcome& o = outcomes[rb];
            o.rb_index = static_cast<int>(rb);
            o.ch_id = heads[rb];
            o.ch_was_active = v.traffic.is_active(heads[rb]);
            if (partner[o.ch_id] >= 0) {
                o.nch_id = partner[o.ch_id];
            }
            o.wasted = !o.ch_was_active && !o.nch_id;
            if (!o.nch_id) {
                if (o.ch_was_active) {
                    o.r_ch_bps = oma_rate(p_tx_w, gains[o.ch_id], cfg.bandwidth_hz);
                }
                continue;
            }
            const double gamma_ch = gains[o.ch_id];
            const double gamma_nch = gains[*o.nch_id];
            if (!o.ch_was_active) {
                o.r_nch_bps = oma_rate(p_tx_w, gamma_nch, cfg.bandwidth_hz);
                continue;
            }
            o.mode_used = gamma_ch <= gamma_nch ? 0 : 1;  // weak CH pairs upward
            if (o.mode_used == 0) {
                const NomaRates rates =
                    noma_rates(p_tx_w, gamma_nch, p_tx_w, gamma_ch, cfg.bandwidth_hz);
                o.r_ch_bps = rates.weak_bps;
                o.r_nch_bps = rates.strong_bps;
            } else {
                const NomaRates rates =
                    noma_rates(p_tx_w, gamma_ch, p_tx_w, gamma_nch, cfg.bandwidth_hz);
                o.r_ch_bps = rates.strong_bps;
                o.r_nch_bps = rates.weak_bps;
            }
        }
        return outcomes;
    }

    const CycleLog& step() {
        if (cycle >= cfg.n_cycles) {
            throw std::logic_error("simulation stepped past its horizon");
        }
        const TrafficDraws traffic_draws = draw_traffic(cfg.n_devices, traffic_stream);
        const std::vector<double> gains = channel.draw_gains(channel_stream);
        const PredictionDraws pred_draws = draw_prediction(cfg, predictor_stream);

        log.cycle = cycle;
        log.realized_error = pred_draws.error;

        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            PerVariant& v = variants[vi];
            v.traffic.drop_expired(cycle);
            v.traffic.step(cycle, schedule, traffic_draws, cfg);
            const std::vector<int> actives = v.traffic.active_ids();

            std::vector<double> theta_by_id;
            if (v.kind == Variant::BestOma || v.kind == Variant::QuasiBest ||
                v.kind == Variant::QuasiMab) {
                theta_by_id.assign(population.size(), 0.0);
                for (int id : actives) {
                    theta_by_id[id] = standalone_reward(v, id, gains);
                }
            }

            std::vector<int> heads;
            switch (v.kind) {
                case Variant::OmaMab:
                case Variant::NomaMab:
                case Variant::QuasiMab:
                    heads = mab_select(v, actives, pred_draws);
                    break;
                case Variant::BestOma:
                case Variant::QuasiBest:
                    heads = best_oma(actives, theta_by_id, cfg.n_rbs);
                    break;
            }

            std::vector<PairingOutcome> outcomes;
            std::vector<PairingOutcome> round1;
            if (v.kind == Variant::OmaMab || v.kind == Variant::BestOma) {
                outcomes = oma_outcomes(v, heads, gains);
                fill_thetas(v, outcomes);
            } else {
                std::vector<int> sorted_heads = heads;
                std::sort(sorted_heads.begin(), sorted_heads.end());
                std::vector<int> nchs;
                std::set_difference(actives.begin(), actives.end(), sorted_heads.begin(),
                                    sorted_heads.end(), std::back_inserter(nchs));
                if (v.kind == Variant::NomaMab) {
                    std::vector<ChGrant> grants(heads.size());
                    for (std::size_t rb = 0; rb < heads.size(); ++rb) {
                        grants[rb] = {static_cast<int>(rb), heads[rb],
                                      v.traffic.is_active(heads[rb])};
                    }
                    outcomes = run_pairing(grants, nchs, gains, population, pairing_params,
                                           v.pairing,
                                           pairing_params.mode_switch_enabled ? &round1
                                                                              : nullptr);
                    fill_thetas(v, outcomes);
                    if (pairing_params.mode_switch_enabled) {
                        fill_thetas(v, round1);
                    }
                } else {
                    outcomes = matched_outcomes(v, heads, nchs, gains, theta_by_id);
                    fill_thetas(v, outcomes);
                }
            }

            std::vector<int>& served = log.served_ids[vi];
            served.clear();
            int wasted = 0;
            const double cycle_reward = process_outcomes(v, outcomes, served, wasted);
            log.reward_sum[vi] = cycle_reward;
            log.wasted_rbs[vi] = wasted;

            // Coupled mode-switch shadow: the same cycle scored as if the
            // retry round had not happened.
            if (v.kind == Variant::NomaMab && pairing_params.mode_switch_enabled) {
                double shadow_reward = 0.0;
                int shadow_waste = 0;
                for (const PairingOutcome& o : round1) {
                    shadow_reward += o.theta_ch + o.theta_nch;
                    shadow_waste += o.wasted ? 1 : 0;
                }
                if (wasted > shadow_waste) {
                    ++v.ms_violations;
                }
                v.shadow_cum_reward += shadow_reward;
                v.shadow_cum_waste += shadow_waste;
                v.shadow_reward_series.push_back(v.shadow_cum_reward);
                v.shadow_waste_series.push_back(static_cast<double>(v.shadow_cum_waste));
            }

            if (is_mab(v.kind)) {
                v.bandit.apply_outcomes(outcomes, cfg.reward_share_rho);
            }
            v.reward_series.push_back(v.cum_reward);
            v.waste_series.push_back(static_cast<double>(v.cum_waste));
        }

        // Regret against the oracle reference, negative increments allowed.
        long best_index = -1;
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            if (variants[vi].kind == Variant::BestOma) {
                best_index = static_cast<long>(vi);
            }
        }
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            const double increment =
                best_index >= 0 ? log.reward_sum[best_index] - log.reward_sum[vi] : 0.0;
            log.regret_increment[vi] = increment;
            variants[vi].cum_regret += increment;
            variants[vi].regret_series.push_back(variants[vi].cum_regret);
        }

        ++cycle;
        return log;
    }
};

SimulationRun::SimulationRun(const ScenarioConfig& cfg, std::uint64_t seed,
                             std::vector<Variant> variants)
    : impl_(std::make_unique<Impl>(cfg, seed, std::move(variants))) {}

SimulationRun::~SimulationRun() = default;

const CycleLog& SimulationRun::step() {
    return impl_->step();
}

long SimulationRun::cycle() const {
    return impl_->cycle;
}

const std::vector<MtdProfile>& SimulationRun::population() const {
    return impl_->population;
}

const BanditState* SimulationRun::bandit(Variant kind) const {
    for (const PerVariant& v : impl_->variants) {
        if (v.kind == kind && is_mab(kind)) {
            return &v.bandit;
        }
    }
    return nullptr;
}

RunResult SimulationRun::finish() const {
    RunResult result;
    const Impl& impl = *impl_;
    const double capacity =
        static_cast<double>(impl.cfg.n_rbs) * static_cast<double>(impl.cfg.n_cycles);
    for (const PerVariant& v : impl.variants) {
        VariantSummary s;
        s.kind = v.kind;
        s.name = v.name;
        s.missing_ratio = static_cast<double>(v.cum_waste) / capacity;
        s.winners = static_cast<double>(v.winners);
        s.avg_max_delay = v.winners > 0 ? v.sum_max_delay / static_cast<double>(v.winners) : 0.0;
        s.avg_access_delay =
            v.winners > 0 ? v.sum_access_delay / static_cast<double>(v.winners) : 0.0;
        s.total_reward = v.cum_reward;
        s.final_regret = v.cum_regret;
        s.wasted_total = static_cast<double>(v.cum_waste);
        s.grants_total = static_cast<double>(v.grants);
        s.drops_total = static_cast<double>(v.traffic.total_drops());
        s.outside_prediction = static_cast<double>(v.outside_prediction);
        s.ms_coupling_violations = static_cast<double>(v.ms_violations);
        s.histogram = v.histogram;
        s.cum_reward = v.reward_series;
        s.cum_regret = v.regret_series;
        s.cum_waste = v.waste_series;
        s.has_ms_shadow = !v.shadow_reward_series.empty();
        s.ms_off_cum_reward = v.shadow_reward_series;
        s.ms_off_cum_waste = v.shadow_waste_series;
        result.variants.push_back(std::move(s));
    }
    return result;
}

RunResult run_replication(const ScenarioConfig& cfg, std::uint64_t seed,
                          const std::vector<Variant>& variants) {
    SimulationRun run(cfg, seed, variants);
    RunResult result;
    result.realized_error.reserve(cfg.n_cycles);
    for (long t = 0; t < cfg.n_cycles; ++t) {
        result.realized_error.push_back(run.step().realized_error);
    }
    RunResult finished = run.finish();
    finished.realized_error = std::move(result.realized_error);
    return finished;
}

namespace {

void accumulate(std::vector<double>& into, const std::vector<double>& from, double scale) {
    if (into.empty()) {
        into.assign(from.size(), 0.0);
    }
    for (std::size_t i = 0; i < from.size(); ++i) {
        into[i] += from[i] * scale;
    }
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& cfg, int replications,
                                const std::vector<Variant>& variants, int jobs) {
    cfg.validate();
    if (replications < 1) {
        throw std::invalid_argument("run_experiment: need at least one replication");
    }
    ExperimentResult result;
    result.cfg = cfg;
    result.replications = replications;
    RngStream seeder = derive_stream(cfg.rng_seed, "replication-seeds");
    result.seeds.resize(replications);
    for (int r = 0; r < replications; ++r) {
        result.seeds[r] = seeder();
    }

    std::vector<RunResult> runs(replications);
    const int workers = std::max(1, std::min(jobs, replications));
    if (workers == 1) {
        for (int r = 0; r < replications; ++r) {
            runs[r] = run_replication(cfg, result.seeds[r], variants);
        }
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int r = w; r < replications; r += workers) {
                    runs[r] = run_replication(cfg, result.seeds[r], variants);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    const double scale = 1.0 / static_cast<double>(replications);
    result.variants.resize(variants.size());
    for (int r = 0; r < replications; ++r) {
        accumulate(result.realized_error, runs[r].realized_error, scale);
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            const VariantSummary& from = runs[r].variants[vi];
            VariantSummary& into = result.variants[vi];
            into.kind = from.kind;
            into.name = from.name;
            into.missing_ratio += from.missing_ratio * scale;
            into.winners += from.winners * scale;
            into.avg_max_delay += from.avg_max_delay * scale;
            into.avg_access_delay += from.avg_access_delay * scale;
            into.total_reward += from.total_reward * scale;
            into.final_regret += from.final_regret * scale;
            into.wasted_total += from.wasted_total * scale;
            into.grants_total += from.grants_total * scale;
            into.drops_total += from.drops_total * scale;
            into.outside_prediction += from.outside_prediction;      // summed
            into.ms_coupling_violations += from.ms_coupling_violations;  // summed
            into.has_ms_shadow = into.has_ms_shadow || from.has_ms_shadow;
            accumulate(into.histogram, from.histogram, scale);
            accumulate(into.cum_reward, from.cum_reward, scale);
            accumulate(into.cum_regret, from.cum_regret, scale);
            accumulate(into.cum_waste, from.cum_waste, scale);
            accumulate(into.ms_off_cum_reward, from.ms_off_cum_reward, scale);
            accumulate(into.ms_off_cum_waste, from.ms_off_cum_waste, scale);
        }
    }
    return result;
}

std::vector<ExperimentResult> sweep_prediction_error(const ScenarioConfig& cfg,
                                                     const std::vector<double>& error_means,
                                                     int replications,
                                                     const std::vector<Variant>& variants,
                                                     int jobs) {
    std::vector<ExperimentResult> results;
    results.reserve(error_means.size());
    for (double mean : error_means) {
        ScenarioConfig swept = cfg;
        swept.pred_err_mean = mean;
        results.push_back(run_experiment(swept, replications, variants, jobs));
    }
    return results;
}

}  // namespace fastgrant

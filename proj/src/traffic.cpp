#include "fastgrant/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace fastgrant {

double beta_activation_pdf(double t, double t_a, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("beta_activation_pdf: shape parameters must be positive");
    }
    if (t < 0.0 || t > t_a || !(t_a > 0.0)) {
        throw std::domain_error("beta_activation_pdf: t must lie in [0, T_A]");
    }
    const double log_beta_fn =
        std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    const double norm = std::pow(t_a, alpha + beta - 1.0) * std::exp(log_beta_fn);
    return std::pow(t, alpha - 1.0) * std::pow(t_a - t, beta - 1.0) / norm;
}

ActivationSchedule build_activation_schedule(const ScenarioConfig& cfg, RngStream& stream) {
    const int slots = cfg.activation_slots;
    const double t_a = static_cast<double>(slots);  // one slot per cycle
    ActivationSchedule schedule;
    schedule.slot_probabilities.resize(slots);
    double total = 0.0;
    for (int s = 0; s < slots; ++s) {
        const double midpoint = (s + 0.5) * t_a / slots;
        schedule.slot_probabilities[s] = beta_activation_pdf(midpoint, t_a, cfg.beta_alpha,
                                                             cfg.beta_beta);
        total += schedule.slot_probabilities[s];
    }
    for (double& p : schedule.slot_probabilities) {
        p /= total;
    }

    schedule.assignment.resize(cfg.n_devices);
    for (int i = 0; i < cfg.n_devices; ++i) {
        const double u = uniform_double(stream);
        double cumulative = 0.0;
        int chosen = slots - 1;
        for (int s = 0; s < slots; ++s) {
            cumulative += schedule.slot_probabilities[s];
            if (u < cumulative) {
                chosen = s;
                break;
            }
        }
        schedule.assignment[i] = chosen;
    }
    return schedule;
}

TrafficDraws draw_traffic(int n_devices, RngStream& stream) {
    TrafficDraws draws;
    draws.reactivation_u.resize(n_devices);
    draws.packet_value_u.resize(n_devices);
    for (int i = 0; i < n_devices; ++i) {
        draws.reactivation_u[i] = uniform_double(stream);
    }
    for (int i = 0; i < n_devices; ++i) {
        draws.packet_value_u[i] = uniform_double(stream);
    }
    return draws;
}

long access_delay(const Packet& packet, long cycle) {
    return cycle - packet.created_cycle;
}

TrafficState::TrafficState(const std::vector<MtdProfile>& population)
    : population_(&population), pending_(population.size()) {}

std::vector<int> TrafficState::drop_expired(long cycle) {
    std::vector<int> dropped;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
        if (pending_[i] && cycle > pending_[i]->deadline_cycle) {
            pending_[i].reset();
            dropped.push_back(static_cast<int>(i));
            ++total_drops_;
        }
    }
    return dropped;
}

std::vector<int> TrafficState::step(long cycle, const ActivationSchedule& schedule,
                                    const TrafficDraws& draws, const ScenarioConfig& cfg) {
    std::vector<int> activated;
    const int n = static_cast<int>(pending_.size());
    for (int i = 0; i < n; ++i) {
        if (pending_[i]) {
            continue;  // one pending packet per device
        }
        bool activates = false;
        if (cycle < cfg.activation_slots) {
            activates = schedule.assignment[i] == cycle;
        } else {
            activates = draws.reactivation_u[i] < cfg.reactivation_prob;
        }
        if (!activates) {
            continue;
        }
        Packet p;
        p.owner_id = i;
        p.created_cycle = cycle;
        p.value_of_info = draws.packet_value_u[i];
        p.deadline_cycle = cycle + (*population_)[i].max_delay_cycles;
        pending_[i] = p;
        activated.push_back(i);
    }
    return activated;
}

std::vector<int> TrafficState::active_ids() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
        if (pending_[i]) {
            ids.push_back(static_cast<int>(i));
        }
    }
    return ids;
}

const Packet& TrafficState::packet(int id) const {
    if (!pending_[id]) {
        throw std::logic_error("no pending packet for device " + std::to_string(id));
    }
    return *pending_[id];
}

void TrafficState::serve(int id) {
    pending_[id].reset();
}

}  // namespace fastgrant

#pragma once

#include <optional>
#include <vector>

#include "fastgrant/config.hpp"
#include "fastgrant/population.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

struct Packet {
    int owner_id = 0;
    long created_cycle = 0;
    double value_of_info = 0.0;  // v_i in [0, 1]
    long deadline_cycle = 0;     // created + D_i; dropped once the cycle passes it
};

struct ActivationSchedule {
    std::vector<double> slot_probabilities;  // I_A entries, sum 1
    std::vector<int> assignment;             // device id -> burst slot
};

// Beta-shaped activation density over [0, T_A]:
// t^(a-1) (T_A - t)^(b-1) / (T_A^(a+b-1) B(a, b)). Throws on domain errors.
double beta_activation_pdf(double t, double t_a, double alpha, double beta);

// Slot probabilities from the pdf at slot midpoints (renormalized); every
// device gets one burst slot sampled from that distribution.
ActivationSchedule build_activation_schedule(const ScenarioConfig& cfg, RngStream& stream);

// Per-cycle randomness shared by all system variants in a run: the draws are
// made once and applied against each variant's own state.
struct TrafficDraws {
    std::vector<double> reactivation_u;  // one uniform per device
    std::vector<double> packet_value_u;  // v_i if a packet is created this cycle
};

TrafficDraws draw_traffic(int n_devices, RngStream& stream);

long access_delay(const Packet& packet, long cycle);

// Pending packets for one simulation variant. At most one packet per device;
// activating an already-active device is a no-op.
class TrafficState {
  public:
    explicit TrafficState(const std::vector<MtdProfile>& population);

    // Removes packets whose deadline has passed; returns the dropped ids.
    std::vector<int> drop_expired(long cycle);

    // Burst-slot activations while cycle < I_A, Bernoulli reactivation after.
    std::vector<int> step(long cycle, const ActivationSchedule& schedule,
                          const TrafficDraws& draws, const ScenarioConfig& cfg);

    std::vector<int> active_ids() const;
    bool is_active(int id) const { return pending_[id].has_value(); }
    const Packet& packet(int id) const;
    void serve(int id);  // clears the pending packet

    long total_drops() const { return total_drops_; }

  private:
    const std::vector<MtdProfile>* population_;
    std::vector<std::optional<Packet>> pending_;
    long total_drops_ = 0;
};

}  // namespace fastgrant

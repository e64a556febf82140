#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fastgrant/pairing.hpp"
#include "fastgrant/predictor.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

// Availability-weighted UCB index:
//   p_a * (z/n + sqrt(8 ln(t') / n)),
// +infinity while a device has never banked a reward, so new arrivals are
// explored first. t' below 2 falls back to ln 2 to keep the bonus sane in the
// opening cycles.
double ucb_index(double z, std::uint64_t n, double p_a, double t_prime);

// Learning memory of the fast-grant scheduler. z accumulates rewards
// (including the incentive share from forwarded grants), n counts only
// selections that produced a nonzero individual reward, and predicted_count
// tracks how often the predictor reported the device active (the t'
// estimate).
class BanditState {
  public:
    explicit BanditState(int n_devices);

    void note_predicted(const std::vector<int>& ids);
    void note_true_active(const std::vector<int>& ids);
    void mark_selected(const std::vector<int>& ids);

    // Cluster-head and partner rewards, Eq.-style split: the CH banks its own
    // reward plus rho times the partner's, the partner keeps the rest.
    void apply_outcomes(const std::vector<PairingOutcome>& outcomes, double rho);

    double index_of(int id, double p_a, bool use_true_t_prime = false) const;

    double z(int id) const { return z_[id]; }
    std::uint64_t plays(int id) const { return n_[id]; }
    std::uint64_t predicted_count(int id) const { return predicted_count_[id]; }
    std::uint64_t true_active_count(int id) const { return true_active_count_[id]; }
    bool ever_selected(int id) const { return ever_selected_[id] != 0; }
    int size() const { return static_cast<int>(z_.size()); }

    // Flat inspection table: device_id,z,n,predicted_count.
    std::string to_csv() const;
    static BanditState from_csv(const std::string& csv);

  private:
    std::vector<double> z_;
    std::vector<std::uint64_t> n_;
    std::vector<std::uint64_t> predicted_count_;
    std::vector<std::uint64_t> true_active_count_;
    std::vector<std::uint8_t> ever_selected_;
};

// Top-m candidates by UCB index; never-rewarded devices outrank everything
// and ties break uniformly at random. Fewer than m candidates means all are
// granted. The returned order is the RB assignment order.
std::vector<int> select_cluster_heads(const CandidateSet& candidates, const BanditState& state,
                                      int m, RngStream& stream,
                                      bool use_true_t_prime = false);

}  // namespace fastgrant

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fastgrant {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Full scenario description. Defaults reproduce the reference setup, so an
// empty config file is a valid run.
struct ScenarioConfig {
    int n_devices = 500;                  // N
    int n_rbs = 10;                       // M
    long n_cycles = 10000;                // T
    double bandwidth_hz = 360e3;          // B, per resource block
    double tx_power_dbm = 10.0;           // P_t
    double sic_tolerance_dbm = 4.0;       // P_tol, minimum received-power gap for SIC
    double reward_share_rho = 0.3;        // share of the partner reward credited to the CH
    double beta_alpha = 3.0;
    double beta_beta = 4.0;
    int activation_slots = 10;            // I_A; one slot per cycle during the burst
    double area_side_m = 500.0;
    double noise_psd_dbm_hz = -174.0;
    double shadowing_sigma_db = 10.0;
    double delta1 = 0.2;                  // value-of-information weight
    double delta2 = 0.3;                  // normalized-rate weight
    double delta3 = 0.5;                  // delay weight
    double gompertz_a = 1.0;
    double gompertz_b = 8.0;
    double gompertz_c = 0.03;
    double r_max_bps = 2e7;               // rate normalizer; high enough for this geometry
    double min_rate_bps = 0.0;            // per-device rate threshold (0 = always satisfied)
    double pred_err_mean = 0.01;          // average prediction error e_p
    double pred_err_std = 0.04;
    double p_active_min = 0.8;            // activity-probability range reported by the predictor
    double p_active_max = 1.0;
    double reactivation_prob = 0.09;      // per-device Bernoulli reactivation after the burst
    int default_mode = 0;                 // 0: CH pairs as weak user, 1: as strong user
    bool mode_switch_enabled = true;      // unpaired CHs may retry with the opposite mode
    bool use_true_t_prime = false;        // diagnostic: feed the UCB the true activity count
    std::uint64_t rng_seed = 1;

    // Empty when the config is valid; otherwise one message per violation.
    std::vector<std::string> violations() const;
    void validate() const;  // throws ConfigError listing all violations
};

// Flat "key = value" text, one parameter per line, '#' comments.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string config_to_text(const ScenarioConfig& cfg);

}  // namespace fastgrant

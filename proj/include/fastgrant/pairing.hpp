#pragma once

#include <optional>
#include <vector>

#include "fastgrant/config.hpp"
#include "fastgrant/population.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

struct PairingParams {
    double p_tx_w = 0.0;
    double p_tol_w = 0.0;
    double bandwidth_hz = 0.0;
    int default_mode = 0;           // 0: CH transmits as the weak user
    bool mode_switch_enabled = false;

    static PairingParams from_config(const ScenarioConfig& cfg);
};

// Broadcast by a CH: its id plus the SNR threshold responders must clear.
struct PairingRequest {
    int ch_id = 0;
    double gamma_ch = 0.0;
    int mode = 0;
    double gamma_threshold = 0.0;
};

// Threshold from the SIC power-gap condition under equal power allocation:
// mode 0 -> gamma_ch + P_tol/P_t, mode 1 -> gamma_ch - P_tol/P_t (floor 0).
double gamma_threshold(double gamma_ch, double p_t_w, double p_tol_w, int mode);

PairingRequest make_request(int ch_id, double gamma_ch, int mode, const PairingParams& params);

// mode 0 needs a stronger partner (gamma_n >= threshold), mode 1 a weaker one.
// Both boundaries inclusive.
bool eligible(double nch_gamma, const PairingRequest& request);

// Nearest CH by device-to-device distance (the large-scale RSS proxy); ties go
// to the lower CH id. Result aligned with nch_ids; empty when ch_ids is empty.
std::vector<int> associate(const std::vector<int>& nch_ids, const std::vector<int>& ch_ids,
                           const std::vector<MtdProfile>& population);

struct ChGrant {
    int rb_index = 0;
    int ch_id = 0;
    bool active = false;
};

struct PairingOutcome {
    int rb_index = 0;
    int ch_id = 0;
    bool ch_was_active = false;
    std::optional<int> nch_id;
    int mode_used = 0;
    bool mode_switched = false;
    double r_ch_bps = 0.0;
    double r_nch_bps = 0.0;
    double theta_ch = 0.0;   // filled by the caller once rewards are known
    double theta_nch = 0.0;
    bool wasted = false;     // CH inactive and no partner found
};

// One cycle of the distributed pairing protocol. Round 1: every CH announces
// at the default mode, each associated eligible nCH responds, each CH picks
// one responder uniformly at random. Round 2 (mode switch only): unpaired CHs
// re-announce with the opposite mode over the still-unpaired nCHs. An
// inactive CH forwards the grant: its partner transmits interference-free.
// When round1_snapshot is given it receives the outcomes as they stood after
// round 1, for coupled with/without-mode-switch comparisons.
std::vector<PairingOutcome> run_pairing(const std::vector<ChGrant>& grants,
                                        const std::vector<int>& active_nchs,
                                        const std::vector<double>& gains,
                                        const std::vector<MtdProfile>& population,
                                        const PairingParams& params, RngStream& stream,
                                        std::vector<PairingOutcome>* round1_snapshot = nullptr);

}  // namespace fastgrant

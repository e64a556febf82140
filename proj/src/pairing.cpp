#include "fastgrant/pairing.hpp"

#include <algorithm>
#include <cmath>

#include "fastgrant/channel.hpp"

namespace fastgrant {

PairingParams PairingParams::from_config(const ScenarioConfig& cfg) {
    PairingParams params;
    params.p_tx_w = dbm_to_watts(cfg.tx_power_dbm);
    params.p_tol_w = dbm_to_watts(cfg.sic_tolerance_dbm);
    params.bandwidth_hz = cfg.bandwidth_hz;
    params.default_mode = cfg.default_mode;
    params.mode_switch_enabled = cfg.mode_switch_enabled;
    return params;
}

double gamma_threshold(double gamma_ch, double p_t_w, double p_tol_w, int mode) {
    const double gap = p_tol_w / p_t_w;
    if (mode == 0) {
        return gamma_ch + gap;
    }
    return std::max(gamma_ch - gap, 0.0);
}

PairingRequest make_request(int ch_id, double gamma_ch, int mode,
                            const PairingParams& params) {
    PairingRequest request;
    request.ch_id = ch_id;
    request.gamma_ch = gamma_ch;
    request.mode = mode;
    request.gamma_threshold = gamma_threshold(gamma_ch, params.p_tx_w, params.p_tol_w, mode);
    return request;
}

bool eligible(double nch_gamma, const PairingRequest& request) {
    if (request.mode == 0) {
        return nch_gamma >= request.gamma_threshold;
    }
    return nch_gamma <= request.gamma_threshold;
}

std::vector<int> associate(const std::vector<int>& nch_ids, const std::vector<int>& ch_ids,
                           const std::vector<MtdProfile>& population) {
    if (ch_ids.empty()) {
        return {};
    }
    std::vector<int> assoc(nch_ids.size());
    for (std::size_t k = 0; k < nch_ids.size(); ++k) {
        const MtdProfile& nch = population[nch_ids[k]];
        double best_d2 = 0.0;
        int best_ch = -1;
        for (int ch : ch_ids) {
            const MtdProfile& head = population[ch];
            const double dx = head.x_m - nch.x_m;
            const double dy = head.y_m - nch.y_m;
            const double d2 = dx * dx + dy * dy;
            if (best_ch < 0 || d2 < best_d2 || (d2 == best_d2 && ch < best_ch)) {
                best_d2 = d2;
                best_ch = ch;
            }
        }
        assoc[k] = best_ch;
    }
    return assoc;
}

namespace {

// One announce/respond/select round over the given CH subset. Responder lists
// are disjoint because each nCH answers only its associated CH, so picks in
// RB order never conflict.
void pairing_round(std::vector<PairingOutcome>& outcomes, const std::vector<int>& round_rbs,
                   std::vector<int>& unpaired_nchs, const std::vector<double>& gains,
                   const std::vector<MtdProfile>& population, const PairingParams& params,
                   int mode, bool switched, RngStream& stream) {
    if (round_rbs.empty() || unpaired_nchs.empty()) {
        return;
    }
    std::vector<int> ch_ids;
    ch_ids.reserve(round_rbs.size());
    for (int rb : round_rbs) {
        ch_ids.push_back(outcomes[rb].ch_id);
    }
    const std::vector<int> assoc = associate(unpaired_nchs, ch_ids, population);

    std::vector<std::vector<int>> responders(round_rbs.size());
    for (std::size_t slot = 0; slot < round_rbs.size(); ++slot) {
        const PairingRequest request =
            make_request(ch_ids[slot], gains[ch_ids[slot]], mode, params);
        for (std::size_t k = 0; k < unpaired_nchs.size(); ++k) {
            if (assoc[k] == ch_ids[slot] && eligible(gains[unpaired_nchs[k]], request)) {
                responders[slot].push_back(unpaired_nchs[k]);
            }
        }
    }

    std::vector<int> paired;
    for (std::size_t slot = 0; slot < round_rbs.size(); ++slot) {
        if (responders[slot].empty()) {
            continue;
        }
        const std::size_t pick = bounded_uint(stream, responders[slot].size());
        PairingOutcome& outcome = outcomes[round_rbs[slot]];
        outcome.nch_id = responders[slot][pick];
        outcome.mode_used = mode;
        outcome.mode_switched = switched;
        paired.push_back(responders[slot][pick]);
    }
    std::erase_if(unpaired_nchs, [&paired](int id) {
        return std::find(paired.begin(), paired.end(), id) != paired.end();
    });
}

void finalize_outcomes(std::vector<PairingOutcome>& outcomes, const std::vector<double>& gains,
                       const PairingParams& params) {
    for (PairingOutcome& o : outcomes) {
        o.wasted = !o.ch_was_active && !o.nch_id.has_value();
        o.r_ch_bps = 0.0;
        o.r_nch_bps = 0.0;
        if (!o.nch_id) {
            if (o.ch_was_active) {
                o.r_ch_bps = oma_rate(params.p_tx_w, gains[o.ch_id], params.bandwidth_hz);
            }
            continue;
        }
        const double gamma_ch = gains[o.ch_id];
        const double gamma_nch = gains[*o.nch_id];
        if (!o.ch_was_active) {
            // Grant forwarded; the partner transmits alone.
            o.r_nch_bps = oma_rate(params.p_tx_w, gamma_nch, params.bandwidth_hz);
            continue;
        }
        if (o.mode_used == 0) {
            const NomaRates rates =
                noma_rates(params.p_tx_w, gamma_nch, params.p_tx_w, gamma_ch,
                           params.bandwidth_hz);
            o.r_ch_bps = rates.weak_bps;
            o.r_nch_bps = rates.strong_bps;
        } else {
            const NomaRates rates =
                noma_rates(params.p_tx_w, gamma_ch, params.p_tx_w, gamma_nch,
                           params.bandwidth_hz);
            o.r_ch_bps = rates.strong_bps;
            o.r_nch_bps = rates.weak_bps;
        }
    }
}

}  // namespace

std::vector<PairingOutcome> run_pairing(const std::vector<ChGrant>& grants,
                                        const std::vector<int>& active_nchs,
                                        const std::vector<double>& gains,
                                        const std::vector<MtdProfile>& population,
                                        const PairingParams& params, RngStream& stream,
                                        std::vector<PairingOutcome>* round1_snapshot) {
    std::vector<PairingOutcome> outcomes(grants.size());
    for (std::size_t i = 0; i < grants.size(); ++i) {
        outcomes[i].rb_index = grants[i].rb_index;
        outcomes[i].ch_id = grants[i].ch_id;
        outcomes[i].ch_was_active = grants[i].active;
        outcomes[i].mode_used = params.default_mode;
    }

    std::vector<int> unpaired_nchs = active_nchs;
    std::vector<int> all_rbs(grants.size());
    for (std::size_t i = 0; i < grants.size(); ++i) {
        all_rbs[i] = static_cast<int>(i);
    }
    pairing_round(outcomes, all_rbs, unpaired_nchs, gains, population, params,
                  params.default_mode, false, stream);

    if (round1_snapshot) {
        *round1_snapshot = outcomes;
        finalize_outcomes(*round1_snapshot, gains, params);
    }

    if (params.mode_switch_enabled) {
        std::vector<int> retry_rbs;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (!outcomes[i].nch_id) {
                retry_rbs.push_back(static_cast<int>(i));
            }
        }
        pairing_round(outcomes, retry_rbs, unpaired_nchs, gains, population, params,
                      1 - params.default_mode, true, stream);
    }

    finalize_outcomes(outcomes, gains, params);
    return outcomes;
}

}  // namespace fastgrant

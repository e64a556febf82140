#pragma once

#include <utility>
#include <vector>

namespace fastgrant {

// One cycle's quasi-optimal pairing problem: weights are CH + nCH rewards,
// entries failing the SIC gap condition carry weight 0.
struct MatchingInstance {
    std::vector<int> ch_ids;
    std::vector<int> nch_ids;
    std::vector<std::vector<double>> weight;    // [ch][nch]
    std::vector<std::vector<char>> eligible;    // [ch][nch]
};

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // (ch_id, nch_id); zero-weight pairs omitted
    double value = 0.0;
};

// The m active devices with the highest realized rewards, one per RB, ties to
// the lower id. reward_by_id is indexed by device id.
std::vector<int> best_oma(const std::vector<int>& active_ids,
                          const std::vector<double>& reward_by_id, int m);

// Exact maximum-weight one-to-one matching via augmenting paths with
// potentials; O(M^2 * N_an) for M cluster heads.
Matching optimal_pairing(const MatchingInstance& instance);

// Exhaustive enumeration over all injective partial assignments. Refuses
// instances beyond 6 CHs x 8 nCHs.
double brute_force_matching(const MatchingInstance& instance);

}  // namespace fastgrant

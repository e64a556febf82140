#include "fastgrant/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fastgrant {

std::vector<int> best_oma(const std::vector<int>& active_ids,
                          const std::vector<double>& reward_by_id, int m) {
    std::vector<int> sorted = active_ids;
    std::sort(sorted.begin(), sorted.end(), [&reward_by_id](int a, int b) {
        if (reward_by_id[a] != reward_by_id[b]) {
            return reward_by_id[a] > reward_by_id[b];
        }
        return a < b;
    });
    if (sorted.size() > static_cast<std::size_t>(m)) {
        sorted.resize(m);
    }
    return sorted;
}

Matching optimal_pairing(const MatchingInstance& instance) {
    const int rows = static_cast<int>(instance.ch_ids.size());
    const int raw_cols = static_cast<int>(instance.nch_ids.size());
    Matching result;
    if (rows == 0 || raw_cols == 0) {
        return result;
    }
    // Pad with zero-weight dummy columns so every row can be assigned; dummy
    // or zero-weight assignments are dropped afterwards.
    const int cols = std::max(rows, raw_cols);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    auto cost = [&instance, raw_cols](int i, int j) {
        return j < raw_cols ? -instance.weight[i][j] : 0.0;
    };

    std::vector<double> row_pot(rows + 1, 0.0), col_pot(cols + 1, 0.0);
    std::vector<int> matched_row(cols + 1, 0);  // column -> 1-based row
    std::vector<int> way(cols + 1, 0);
    for (int i = 1; i <= rows; ++i) {
        matched_row[0] = i;
        int j0 = 0;
        std::vector<double> min_slack(cols + 1, kInf);
        std::vector<char> used(cols + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = matched_row[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= cols; ++j) {
                if (used[j]) {
                    continue;
                }
                const double cur = cost(i0 - 1, j - 1) - row_pot[i0] - col_pot[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= cols; ++j) {
                if (used[j]) {
                    row_pot[matched_row[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (matched_row[j0] != 0);
        do {
            const int j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<char> row_used(rows, 0);
    for (int j = 1; j <= cols; ++j) {
        const int i = matched_row[j];
        if (i == 0 || j > raw_cols) {
            continue;
        }
        if (instance.weight[i - 1][j - 1] <= 0.0) {
            continue;
        }
        if (!instance.eligible[i - 1][j - 1]) {
            throw std::logic_error("optimal_pairing: positive-weight pair marked ineligible");
        }
        if (row_used[i - 1]) {
            throw std::logic_error("optimal_pairing: row matched twice");
        }
        row_used[i - 1] = 1;
        result.pairs.emplace_back(instance.ch_ids[i - 1], instance.nch_ids[j - 1]);
        result.value += instance.weight[i - 1][j - 1];
    }
    return result;
}

namespace {

double best_assignment(const MatchingInstance& instance, int row, unsigned used_mask) {
    const int rows = static_cast<int>(instance.ch_ids.size());
    if (row == rows) {
        return 0.0;
    }
    double best = best_assignment(instance, row + 1, used_mask);  // row unmatched
    const int cols = static_cast<int>(instance.nch_ids.size());
    for (int j = 0; j < cols; ++j) {
        if (used_mask & (1u << j)) {
            continue;
        }
        if (!instance.eligible[row][j]) {
            continue;
        }
        best = std::max(best, instance.weight[row][j] +
                                  best_assignment(instance, row + 1, used_mask | (1u << j)));
    }
    return best;
}

}  // namespace

double brute_force_matching(const MatchingInstance& instance) {
    if (instance.ch_ids.size() > 6 || instance.nch_ids.size() > 8) {
        throw std::invalid_argument("brute_force_matching: instance too large (max 6 x 8)");
    }
    return best_assignment(instance, 0, 0);
}

}  // namespace fastgrant

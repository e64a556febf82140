#include "fastgrant/bandit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fastgrant {

double ucb_index(double z, std::uint64_t n, double p_a, double t_prime) {
    if (n == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const double log_t = std::log(std::max(t_prime, 2.0));
    const double nd = static_cast<double>(n);
    return p_a * (z / nd + std::sqrt(8.0 * log_t / nd));
}

BanditState::BanditState(int n_devices)
    : z_(n_devices, 0.0),
      n_(n_devices, 0),
      predicted_count_(n_devices, 0),
      true_active_count_(n_devices, 0),
      ever_selected_(n_devices, 0) {}

void BanditState::note_predicted(const std::vector<int>& ids) {
    for (int id : ids) {
        ++predicted_count_[id];
    }
}

void BanditState::note_true_active(const std::vector<int>& ids) {
    for (int id : ids) {
        ++true_active_count_[id];
    }
}

void BanditState::mark_selected(const std::vector<int>& ids) {
    for (int id : ids) {
        ever_selected_[id] = 1;
    }
}

void BanditState::apply_outcomes(const std::vector<PairingOutcome>& outcomes, double rho) {
    for (const PairingOutcome& o : outcomes) {
        if (o.nch_id) {
            z_[o.ch_id] += o.theta_ch + rho * o.theta_nch;
            z_[*o.nch_id] += (1.0 - rho) * o.theta_nch;
            if (o.theta_nch > 0.0) {
                ++n_[*o.nch_id];
            }
        } else {
            z_[o.ch_id] += o.theta_ch;
        }
        if (o.theta_ch > 0.0) {
            ++n_[o.ch_id];
        }
    }
}

double BanditState::index_of(int id, double p_a, bool use_true_t_prime) const {
    const std::uint64_t t_prime =
        use_true_t_prime ? true_active_count_[id] : predicted_count_[id];
    return ucb_index(z_[id], n_[id], p_a, static_cast<double>(t_prime));
}

std::string BanditState::to_csv() const {
    std::ostringstream out;
    out << "device_id,z,n,predicted_count\n";
    char buf[40];
    for (int id = 0; id < size(); ++id) {
        std::snprintf(buf, sizeof(buf), "%.17g", z_[id]);
        out << id << ',' << buf << ',' << n_[id] << ',' << predicted_count_[id] << '\n';
    }
    return out.str();
}

BanditState BanditState::from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "device_id,z,n,predicted_count") {
        throw std::invalid_argument("bandit state csv: missing or bad header");
    }
    std::vector<std::array<std::string, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::array<std::string, 4> fields;
        std::size_t start = 0;
        for (int f = 0; f < 4; ++f) {
            const std::size_t comma = line.find(',', start);
            if ((comma == std::string::npos) != (f == 3)) {
                throw std::invalid_argument("bandit state csv: malformed row: " + line);
            }
            fields[f] = line.substr(start, comma == std::string::npos ? comma : comma - start);
            start = comma + 1;
        }
        rows.push_back(fields);
    }
    BanditState state(static_cast<int>(rows.size()));
    for (const auto& fields : rows) {
        const int id = std::stoi(fields[0]);
        if (id < 0 || id >= state.size()) {
            throw std::invalid_argument("bandit state csv: device id out of range");
        }
        state.z_[id] = std::stod(fields[1]);
        state.n_[id] = std::stoull(fields[2]);
        state.predicted_count_[id] = std::stoull(fields[3]);
    }
    return state;
}

std::vector<int> select_cluster_heads(const CandidateSet& candidates, const BanditState& state,
                                      int m, RngStream& stream, bool use_true_t_prime) {
    struct Entry {
        double index;
        std::uint64_t tiebreak;
        int id;
    };
    const std::vector<int>& ids = *candidates.ids;
    const std::vector<double>& p_active = *candidates.p_active;
    std::vector<Entry> entries;
    entries.reserve(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        entries.push_back({state.index_of(ids[k], p_active[k], use_true_t_prime), stream(),
                           ids[k]});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.index != b.index) {
            return a.index > b.index;
        }
        if (a.tiebreak != b.tiebreak) {
            return a.tiebreak < b.tiebreak;
        }
        return a.id < b.id;
    });
    const std::size_t take = std::min<std::size_t>(entries.size(), static_cast<std::size_t>(m));
    std::vector<int> selected(take);
    for (std::size_t k = 0; k < take; ++k) {
        selected[k] = entries[k].id;
    }
    return selected;
}

}  // namespace fastgrant

#include "fastgrant/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fastgrant {

namespace {

enum class FieldKind { Int, Long, Double, Bool, U64 };

struct FieldSpec {
    const char* key;
    FieldKind kind;
    void* (*access)(ScenarioConfig&);
};

template <typename T, T ScenarioConfig::* Member>
void* field(ScenarioConfig& cfg) {
    return static_cast<void*>(&(cfg.*Member));
}

const FieldSpec kFields[] = {
    {"n_devices", FieldKind::Int, field<int, &ScenarioConfig::n_devices>},
    {"n_rbs", FieldKind::Int, field<int, &ScenarioConfig::n_rbs>},
    {"n_cycles", FieldKind::Long, field<long, &ScenarioConfig::n_cycles>},
    {"bandwidth_hz", FieldKind::Double, field<double, &ScenarioConfig::bandwidth_hz>},
    {"tx_power_dbm", FieldKind::Double, field<double, &ScenarioConfig::tx_power_dbm>},
    {"sic_tolerance_dbm", FieldKind::Double, field<double, &ScenarioConfig::sic_tolerance_dbm>},
    {"reward_share_rho", FieldKind::Double, field<double, &ScenarioConfig::reward_share_rho>},
    {"beta_alpha", FieldKind::Double, field<double, &ScenarioConfig::beta_alpha>},
    {"beta_beta", FieldKind::Double, field<double, &ScenarioConfig::beta_beta>},
    {"activation_slots", FieldKind::Int, field<int, &ScenarioConfig::activation_slots>},
    {"area_side_m", FieldKind::Double, field<double, &ScenarioConfig::area_side_m>},
    {"noise_psd_dbm_hz", FieldKind::Double, field<double, &ScenarioConfig::noise_psd_dbm_hz>},
    {"shadowing_sigma_db", FieldKind::Double, field<double, &ScenarioConfig::shadowing_sigma_db>},
    {"delta1", FieldKind::Double, field<double, &ScenarioConfig::delta1>},
    {"delta2", FieldKind::Double, field<double, &ScenarioConfig::delta2>},
    {"delta3", FieldKind::Double, field<double, &ScenarioConfig::delta3>},
    {"gompertz_a", FieldKind::Double, field<double, &ScenarioConfig::gompertz_a>},
    {"gompertz_b", FieldKind::Double, field<double, &ScenarioConfig::gompertz_b>},
    {"gompertz_c", FieldKind::Double, field<double, &ScenarioConfig::gompertz_c>},
    {"r_max_bps", FieldKind::Double, field<double, &ScenarioConfig::r_max_bps>},
    {"min_rate_bps", FieldKind::Double, field<double, &ScenarioConfig::min_rate_bps>},
    {"pred_err_mean", FieldKind::Double, field<double, &ScenarioConfig::pred_err_mean>},
    {"pred_err_std", FieldKind::Double, field<double, &ScenarioConfig::pred_err_std>},
    {"p_active_min", FieldKind::Double, field<double, &ScenarioConfig::p_active_min>},
    {"p_active_max", FieldKind::Double, field<double, &ScenarioConfig::p_active_max>},
    {"reactivation_prob", FieldKind::Double, field<double, &ScenarioConfig::reactivation_prob>},
    {"default_mode", FieldKind::Int, field<int, &ScenarioConfig::default_mode>},
    {"mode_switch_enabled", FieldKind::Bool, field<bool, &ScenarioConfig::mode_switch_enabled>},
    {"use_true_t_prime", FieldKind::Bool, field<bool, &ScenarioConfig::use_true_t_prime>},
    {"rng_seed", FieldKind::U64, field<std::uint64_t, &ScenarioConfig::rng_seed>},
};

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") {
        out = true;
        return true;
    }
    if (v == "false" || v == "0" || v == "off" || v == "no") {
        out = false;
        return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::string> ScenarioConfig::violations() const {
    std::vector<std::string> out;
    auto require = [&out](bool ok, const std::string& msg) {
        if (!ok) {
            out.push_back(msg);
        }
    };
    require(n_devices > 0, "n_devices must be positive");
    require(n_rbs > 0, "n_rbs must be positive");
    require(n_cycles > 0, "n_cycles must be positive");
    require(n_devices > n_rbs, "n_devices must exceed n_rbs (N > M)");
    require(activation_slots >= 1, "activation_slots must be at least 1");
    require(bandwidth_hz > 0, "bandwidth_hz must be positive");
    require(area_side_m > 0, "area_side_m must be positive");
    require(std::abs(delta1 + delta2 + delta3 - 1.0) <= 1e-9,
            "delta1 + delta2 + delta3 must equal 1");
    require(delta1 >= 0 && delta2 >= 0 && delta3 >= 0, "delta weights must be nonnegative");
    require(reward_share_rho >= 0 && reward_share_rho <= 1,
            "reward_share_rho must lie in [0, 1]");
    require(pred_err_mean >= 0 && pred_err_mean <= 1, "pred_err_mean must lie in [0, 1]");
    require(pred_err_std >= 0, "pred_err_std must be nonnegative");
    require(beta_alpha > 0 && beta_beta > 0, "beta shape parameters must be positive");
    require(gompertz_a > 0 && gompertz_b > 0 && gompertz_c > 0,
            "gompertz parameters must be positive");
    require(r_max_bps > 0, "r_max_bps must be positive");
    require(min_rate_bps >= 0, "min_rate_bps must be nonnegative");
    require(p_active_min >= 0 && p_active_max <= 1 && p_active_min <= p_active_max,
            "p_active range must satisfy 0 <= min <= max <= 1");
    require(reactivation_prob >= 0 && reactivation_prob <= 1,
            "reactivation_prob must lie in [0, 1]");
    require(default_mode == 0 || default_mode == 1, "default_mode must be 0 or 1");
    require(shadowing_sigma_db >= 0, "shadowing_sigma_db must be nonnegative");
    return out;
}

void ScenarioConfig::validate() const {
    const auto bad = violations();
    if (bad.empty()) {
        return;
    }
    std::string msg = "invalid configuration:";
    for (const auto& v : bad) {
        msg += "\n  - " + v;
    }
    throw ConfigError(msg);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& f : kFields) {
        if (key != f.key) {
            continue;
        }
        void* p = f.access(cfg);
        std::size_t pos = 0;
        try {
            switch (f.kind) {
                case FieldKind::Int:
                    *static_cast<int*>(p) = std::stoi(value, &pos);
                    break;
                case FieldKind::Long:
                    *static_cast<long*>(p) = std::stol(value, &pos);
                    break;
                case FieldKind::Double:
                    *static_cast<double*>(p) = std::stod(value, &pos);
                    break;
                case FieldKind::U64:
                    *static_cast<std::uint64_t*>(p) = std::stoull(value, &pos);
                    break;
                case FieldKind::Bool: {
                    bool b = false;
                    if (!parse_bool(value, b)) {
                        throw ConfigError("invalid boolean for '" + key + "': " + value);
                    }
                    *static_cast<bool*>(p) = b;
                    return;
                }
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("invalid value for '" + key + "': " + value);
        }
        if (pos != value.size()) {
            throw ConfigError("invalid value for '" + key + "': " + value);
        }
        return;
    }
    throw ConfigError("unknown configuration key: " + key);
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got: " + line);
        }
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    ScenarioConfig& mutable_cfg = const_cast<ScenarioConfig&>(cfg);
    for (const auto& f : kFields) {
        void* p = f.access(mutable_cfg);
        out << f.key << " = ";
        switch (f.kind) {
            case FieldKind::Int:
                out << *static_cast<int*>(p);
                break;
            case FieldKind::Long:
                out << *static_cast<long*>(p);
                break;
            case FieldKind::Double:
                out << format_double(*static_cast<double*>(p));
                break;
            case FieldKind::U64:
                out << *static_cast<std::uint64_t*>(p);
                break;
            case FieldKind::Bool:
                out << (*static_cast<bool*>(p) ? "true" : "false");
                break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace fastgrant

#include <doctest.h>

#include <cmath>

#include "fastgrant/channel.hpp"

using namespace fastgrant;

TEST_CASE("dBm and dB conversions round-trip") {
    RngStream stream = derive_stream(1, "units");
    for (int i = 0; i < 1000; ++i) {
        const double dbm = uniform_in(stream, -200.0, 60.0);
        CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
        const double lin = std::exp(uniform_in(stream, -20.0, 20.0));
        CHECK(db_to_linear(linear_to_db(lin)) == doctest::Approx(lin).epsilon(1e-12));
    }
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dbm_to_watts(10.0) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("path loss: reference point, monotonicity, 1 m clamp") {
    CHECK(path_loss_db(1000.0) == doctest::Approx(128.1).epsilon(1e-12));
    CHECK(path_loss_db(0.5) == doctest::Approx(path_loss_db(1.0)));
    double previous = path_loss_db(1.0);
    for (double d = 2.0; d < 1000.0; d *= 1.5) {
        const double current = path_loss_db(d);
        CHECK(current > previous);
        previous = current;
    }
}

TEST_CASE("deterministic gain: distances dominate when randomness is off") {
    // Shadowing 0 dB and unit fading leave only path loss: monotone in distance.
    const double noise = dbm_to_watts(-174.0);
    double previous = 1e300;
    for (double d = 1.0; d < 400.0; d += 25.0) {
        const double pl = db_to_linear(-path_loss_db(d));
        const double gamma = normalized_gain(pl, 0.0, 1.0, noise, 360e3);
        CHECK(gamma < previous);
        CHECK(gamma > 0.0);
        previous = gamma;
    }
}

TEST_CASE("equal positions share path loss but not fading draws") {
    ScenarioConfig cfg;
    cfg.n_devices = 11;
    cfg.n_rbs = 2;
    std::vector<MtdProfile> population(cfg.n_devices);
    for (int i = 0; i < cfg.n_devices; ++i) {
        population[i].id = i;
        population[i].x_m = 100.0;
        population[i].y_m = 350.0;
    }
    const ChannelModel channel(cfg, population);
    for (int i = 1; i < cfg.n_devices; ++i) {
        CHECK(channel.path_loss_linear()[i] == channel.path_loss_linear()[0]);
    }
    RngStream stream = derive_stream(4, "channel");
    const auto gains = channel.draw_gains(stream);
    CHECK(gains[0] != gains[1]);  // independent fading/shadowing
}

TEST_CASE("shadowing-fading log mean matches the analytic value") {
    // 10*log10(shadow * fading) has mean 0 + (-10 gamma_E / ln 10) = -2.5068 dB.
    ScenarioConfig cfg;
    cfg.n_devices = 11;
    cfg.n_rbs = 2;
    std::vector<MtdProfile> population(cfg.n_devices);
    for (int i = 0; i < cfg.n_devices; ++i) {
        population[i].id = i;
        population[i].x_m = 150.0;
        population[i].y_m = 250.0;
    }
    const ChannelModel channel(cfg, population);
    const double fixed_db =
        linear_to_db(channel.path_loss_linear()[0] / channel.noise_power_w());
    RngStream stream = derive_stream(21, "channel");
    double sum = 0.0;
    const int draws = 100000 / cfg.n_devices;
    for (int rep = 0; rep < draws; ++rep) {
        for (double g : channel.draw_gains(stream)) {
            sum += linear_to_db(g) - fixed_db;
        }
    }
    const double mean = sum / (draws * cfg.n_devices);
    CHECK(mean == doctest::Approx(-2.5068).epsilon(0.06));
}

TEST_CASE("interference-free rate") {
    CHECK(oma_rate(0.0, 5.0, 360e3) == doctest::Approx(0.0));
    CHECK(oma_rate(1.0, 1.0, 360e3) == doctest::Approx(360000.0).epsilon(1e-12));
    CHECK(oma_rate(3.0, 1.0, 360e3) == doctest::Approx(720000.0).epsilon(1e-12));
}

TEST_CASE("pair rates: interference-free limit and a direct evaluation") {
    const NomaRates zero_weak = noma_rates(1.0, 7.5, 1.0, 0.0, 360e3);
    CHECK(zero_weak.strong_bps == doctest::Approx(oma_rate(1.0, 7.5, 360e3)).epsilon(1e-12));
    CHECK(zero_weak.weak_bps == doctest::Approx(0.0));

    // p_s*gamma_s = 3, p_w*gamma_w = 1: strong rate is B*log2(2.5).
    const NomaRates rates = noma_rates(1.0, 3.0, 1.0, 1.0, 360e3);
    const double expected = 360e3 * std::log(2.5) / std::log(2.0);
    CHECK(rates.strong_bps == doctest::Approx(expected).epsilon(1e-9));
    CHECK(rates.weak_bps == doctest::Approx(360e3).epsilon(1e-12));
    CHECK(expected == doctest::Approx(475894.114).epsilon(1e-6));
}

TEST_CASE("sum rate identity holds over random inputs") {
    RngStream stream = derive_stream(17, "sumrate");
    for (int i = 0; i < 10000; ++i) {
        const double ps = std::exp(uniform_in(stream, -6.0, 6.0));
        const double gs = std::exp(uniform_in(stream, -6.0, 12.0));
        const double pw = std::exp(uniform_in(stream, -6.0, 6.0));
        const double gw = std::exp(uniform_in(stream, -6.0, 12.0));
        const NomaRates rates = noma_rates(ps, gs, pw, gw, 360e3);
        const double combined = 360e3 * std::log2(1.0 + ps * gs + pw * gw);
        CHECK(rates.strong_bps + rates.weak_bps ==
              doctest::Approx(combined).epsilon(1e-9));
    }
}

TEST_CASE("strong rate falls and weak rate rises with the weak signal") {
    double previous_strong = 1e300;
    double previous_weak = -1.0;
    for (double weak_snr = 0.0; weak_snr < 50.0; weak_snr += 2.5) {
        const NomaRates rates = noma_rates(1.0, 40.0, 1.0, weak_snr, 360e3);
        CHECK(rates.strong_bps < previous_strong);
        CHECK(rates.weak_bps > previous_weak);
        previous_strong = rates.strong_bps;
        previous_weak = rates.weak_bps;
    }
}

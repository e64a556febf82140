#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fastgrant/channel.hpp"
#include "fastgrant/pairing.hpp"

using namespace fastgrant;

namespace {

PairingParams default_params() {
    PairingParams params;
    params.p_tx_w = dbm_to_watts(10.0);
    params.p_tol_w = dbm_to_watts(4.0);
    params.bandwidth_hz = 360e3;
    params.default_mode = 0;
    params.mode_switch_enabled = false;
    return params;
}

std::vector<MtdProfile> grid_population(int n, double spacing) {
    std::vector<MtdProfile> population(n);
    for (int i = 0; i < n; ++i) {
        population[i].id = i;
        population[i].x_m = spacing * i;
        population[i].y_m = 0.0;
    }
    return population;
}

}  // namespace

TEST_CASE("threshold arithmetic for both modes") {
    const double p_t = dbm_to_watts(10.0);
    const double p_tol = dbm_to_watts(4.0);
    // P_tol/P_t = 10^(-0.6).
    CHECK(std::abs(gamma_threshold(2.0, p_t, p_tol, 0) - 2.251188643150958) < 1e-12);
    CHECK(std::abs(gamma_threshold(2.0, p_t, p_tol, 1) - 1.748811356849042) < 1e-12);
    CHECK(gamma_threshold(2.0, p_t, 0.0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gamma_threshold(2.0, p_t, 0.0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    // Strong-mode threshold clamps at zero.
    CHECK(gamma_threshold(0.1, p_t, p_tol, 1) == 0.0);
}

TEST_CASE("eligibility boundaries are inclusive") {
    const PairingParams params = default_params();
    const PairingRequest weak_ch = make_request(0, 2.0, 0, params);
    CHECK(eligible(weak_ch.gamma_threshold, weak_ch));
    CHECK_FALSE(eligible(weak_ch.gamma_threshold - 1e-9, weak_ch));
    CHECK(eligible(10.0, weak_ch));

    const PairingRequest strong_ch = make_request(0, 2.0, 1, params);
    CHECK(eligible(strong_ch.gamma_threshold, strong_ch));
    CHECK_FALSE(eligible(strong_ch.gamma_threshold + 1e-9, strong_ch));
    CHECK(eligible(0.1, strong_ch));
}

TEST_CASE("eligibility implies the SIC power gap") {
    const PairingParams params = default_params();
    RngStream stream = derive_stream(1, "gap");
    for (int i = 0; i < 5000; ++i) {
        const double gamma_ch = std::exp(uniform_in(stream, -2.0, 12.0));
        const double gamma_n = std::exp(uniform_in(stream, -2.0, 12.0));
        const int mode = bounded_uint(stream, 2) == 0 ? 0 : 1;
        const PairingRequest request = make_request(0, gamma_ch, mode, params);
        if (eligible(gamma_n, request)) {
            const double gap = std::abs(params.p_tx_w * gamma_n - params.p_tx_w * gamma_ch);
            CHECK(gap >= params.p_tol_w * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("association picks the nearest CH, ties to the lower id") {
    auto population = grid_population(10, 100.0);

    SUBCASE("single CH takes everyone") {
        const auto assoc = associate({0, 1, 2}, {7}, population);
        CHECK(assoc == std::vector<int>{7, 7, 7});
    }
    SUBCASE("equidistant CHs resolve to the lower id") {
        // Device 5 sits exactly between devices 3 and 7.
        const auto assoc = associate({5}, {7, 3}, population);
        CHECK(assoc == std::vector<int>{3});
    }
    SUBCASE("zero distance wins") {
        population[4].x_m = population[9].x_m;
        const auto assoc = associate({4}, {0, 9}, population);
        CHECK(assoc == std::vector<int>{9});
    }
    SUBCASE("no CHs, no map") {
        CHECK(associate({1, 2}, {}, population).empty());
    }
}

TEST_CASE("no active partners: every outcome unpaired, waste tracks CH activity") {
    const auto population = grid_population(4, 50.0);
    const PairingParams params = default_params();
    RngStream stream = derive_stream(2, "pairing");
    const std::vector<double> gains = {5.0, 4.0, 3.0, 2.0};
    const std::vector<ChGrant> grants = {{0, 0, true}, {1, 1, false}};
    const auto outcomes = run_pairing(grants, {}, gains, population, params, stream);
    REQUIRE(outcomes.size() == 2);
    CHECK_FALSE(outcomes[0].nch_id.has_value());
    CHECK_FALSE(outcomes[0].wasted);
    CHECK(outcomes[0].r_ch_bps ==
          doctest::Approx(oma_rate(params.p_tx_w, 5.0, params.bandwidth_hz)));
    CHECK(outcomes[1].wasted);
    CHECK(outcomes[1].r_ch_bps == 0.0);
}

TEST_CASE("forced pair: weak CH keeps its solo rate, partner takes interference") {
    const auto population = grid_population(2, 10.0);
    const PairingParams params = default_params();
    RngStream stream = derive_stream(3, "pairing");
    const std::vector<double> gains = {2.0, 9.0};  // partner comfortably above threshold
    const std::vector<ChGrant> grants = {{0, 0, true}};
    const auto outcomes = run_pairing(grants, {1}, gains, population, params, stream);
    REQUIRE(outcomes.size() == 1);
    REQUIRE(outcomes[0].nch_id.has_value());
    CHECK(*outcomes[0].nch_id == 1);
    CHECK(outcomes[0].mode_used == 0);
    CHECK_FALSE(outcomes[0].mode_switched);
    const NomaRates expected =
        noma_rates(params.p_tx_w, 9.0, params.p_tx_w, 2.0, params.bandwidth_hz);
    CHECK(outcomes[0].r_ch_bps == doctest::Approx(expected.weak_bps));
    CHECK(outcomes[0].r_nch_bps == doctest::Approx(expected.strong_bps));
    CHECK_FALSE(outcomes[0].wasted);
}

TEST_CASE("an ineligible partner never responds") {
    const auto population = grid_population(2, 10.0);
    const PairingParams params = default_params();
    RngStream stream = derive_stream(4, "pairing");
    const std::vector<double> gains = {2.0, 2.1};  // below gamma_ch + 0.2512
    const std::vector<ChGrant> grants = {{0, 0, true}};
    const auto outcomes = run_pairing(grants, {1}, gains, population, params, stream);
    CHECK_FALSE(outcomes[0].nch_id.has_value());
}

TEST_CASE("a grant to an idle CH is forwarded, not wasted") {
    const auto population = grid_population(2, 10.0);
    const PairingParams params = default_params();
    RngStream stream = derive_stream(5, "pairing");
    const std::vector<double> gains = {2.0, 9.0};
    const std::vector<ChGrant> grants = {{0, 0, false}};
    const auto outcomes = run_pairing(grants, {1}, gains, population, params, stream);
    REQUIRE(outcomes[0].nch_id.has_value());
    CHECK_FALSE(outcomes[0].wasted);
    CHECK(outcomes[0].r_ch_bps == 0.0);
    // Silent CH: the partner transmits interference-free.
    CHECK(outcomes[0].r_nch_bps ==
          doctest::Approx(oma_rate(params.p_tx_w, 9.0, params.bandwidth_hz)));
}

TEST_CASE("partner selection among responders is uniform") {
    const auto population = grid_population(5, 1.0);
    const PairingParams params = default_params();
    RngStream stream = derive_stream(6, "pairing");
    const std::vector<double> gains = {1.0, 5.0, 6.0, 7.0, 8.0};
    const std::vector<ChGrant> grants = {{0, 0, true}};
    int counts[5] = {0, 0, 0, 0, 0};
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto outcomes = run_pairing(grants, {1, 2, 3, 4}, gains, population, params,
                                          stream);
        ++counts[*outcomes[0].nch_id];
    }
    for (int id = 1; id <= 4; ++id) {
        CHECK(std::abs(counts[id] / static_cast<double>(trials) - 0.25) < 0.02);
    }
}

TEST_CASE("mode switch rescues an unpaired CH in the opposite direction") {
    const auto population = grid_population(2, 10.0);
    PairingParams params = default_params();
    params.mode_switch_enabled = true;
    RngStream stream = derive_stream(7, "pairing");
    // Partner is weaker: ineligible under mode 0, eligible once the CH
    // switches to mode 1.
    const std::vector<double> gains = {5.0, 1.0};
    const std::vector<ChGrant> grants = {{0, 0, true}};
    std::vector<PairingOutcome> round1;
    const auto outcomes =
        run_pairing(grants, {1}, gains, population, params, stream, &round1);
    REQUIRE(round1.size() == 1);
    CHECK_FALSE(round1[0].nch_id.has_value());
    REQUIRE(outcomes[0].nch_id.has_value());
    CHECK(outcomes[0].mode_used == 1);
    CHECK(outcomes[0].mode_switched);
    const NomaRates expected =
        noma_rates(params.p_tx_w, 5.0, params.p_tx_w, 1.0, params.bandwidth_hz);
    CHECK(outcomes[0].r_ch_bps == doctest::Approx(expected.strong_bps));
    CHECK(outcomes[0].r_nch_bps == doctest::Approx(expected.weak_bps));
}

TEST_CASE("matching validity and coupled mode-switch dominance on random scenes") {
    RngStream scene = derive_stream(8, "scene");
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 40;
        std::vector<MtdProfile> population(n);
        std::vector<double> gains(n);
        for (int i = 0; i < n; ++i) {
            population[i].id = i;
            population[i].x_m = uniform_in(scene, 0.0, 500.0);
            population[i].y_m = uniform_in(scene, 0.0, 500.0);
            gains[i] = std::exp(uniform_in(scene, 0.0, 10.0));
        }
        std::vector<ChGrant> grants;
        std::vector<int> nchs;
        for (int i = 0; i < 6; ++i) {
            grants.push_back({i, i, uniform_double(scene) < 0.7});
        }
        for (int i = 6; i < n; ++i) {
            if (uniform_double(scene) < 0.5) {
                nchs.push_back(i);
            }
        }
        PairingParams params = default_params();
        params.default_mode = trial % 2;
        params.mode_switch_enabled = true;

        RngStream stream_on = derive_stream(900 + trial, "pairing");
        RngStream stream_off = derive_stream(900 + trial, "pairing");
        std::vector<PairingOutcome> round1;
        const auto with_switch =
            run_pairing(grants, nchs, gains, population, params, stream_on, &round1);
        params.mode_switch_enabled = false;
        const auto without_switch =
            run_pairing(grants, nchs, gains, population, params, stream_off);

        // Identical streams: round 1 must coincide with the no-switch run.
        REQUIRE(round1.size() == without_switch.size());
        int waste_on = 0, waste_off = 0;
        std::set<int> used_partners;
        for (std::size_t rb = 0; rb < with_switch.size(); ++rb) {
            CHECK(round1[rb].nch_id == without_switch[rb].nch_id);
            waste_on += with_switch[rb].wasted ? 1 : 0;
            waste_off += without_switch[rb].wasted ? 1 : 0;
            if (with_switch[rb].nch_id) {
                CHECK(used_partners.insert(*with_switch[rb].nch_id).second);  // no reuse
                const double gap = params.p_tx_w *
                                   std::abs(gains[*with_switch[rb].nch_id] -
                                            gains[with_switch[rb].ch_id]);
                CHECK(gap >= params.p_tol_w * (1.0 - 1e-9));
            }
        }
        CHECK(waste_on <= waste_off);
    }
}

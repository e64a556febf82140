#include <doctest.h>

#include <cmath>

#include "fastgrant/reward.hpp"
#include "fastgrant/rng.hpp"

using namespace fastgrant;

TEST_CASE("gompertz endpoints") {
    CHECK(std::abs(gompertz(0.0, 1.0, 8.0, 0.03) - (1.0 - std::exp(-8.0))) < 1e-12);
    // Direct evaluation of 1 - exp(-8 exp(-3)).
    CHECK(std::abs(gompertz(100.0, 1.0, 8.0, 0.03) - 0.32853712212887287) < 1e-12);
    CHECK(gompertz(1e6, 1.0, 8.0, 0.03) == doctest::Approx(0.0));
}

TEST_CASE("gompertz is strictly decreasing for positive b, c") {
    double previous = 2.0;
    for (double d = 0.0; d <= 400.0; d += 5.0) {
        const double f = gompertz(d, 1.0, 8.0, 0.03);
        CHECK(f < previous);
        CHECK(f >= 0.0);
        previous = f;
    }
}

TEST_CASE("utility: extreme and mixed cases") {
    RewardParams params;
    QosSample best{1.0, params.r_max_bps, 0, 0, 0.0};
    CHECK(utility(best, params) ==
          doctest::Approx(0.2 + 0.3 + 0.5 * (1.0 - std::exp(-8.0))).epsilon(1e-12));

    QosSample worst{0.0, 0.0, 100000, 0, 0.0};
    CHECK(utility(worst, params) == doctest::Approx(0.0).epsilon(1e-9));

    // v=0.5, normalized rate 0.4, D=100.
    QosSample mixed{0.5, 0.4 * params.r_max_bps, 100, 0, 0.0};
    CHECK(utility(mixed, params) == doctest::Approx(0.38426856106443638).epsilon(1e-12));
}

TEST_CASE("rate normalization clamps at one and scales with r_max") {
    RewardParams params;
    QosSample fast{0.0, 5.0 * params.r_max_bps, 100000, 0, 0.0};
    QosSample exact{0.0, params.r_max_bps, 100000, 0, 0.0};
    CHECK(utility(fast, params) == doctest::Approx(utility(exact, params)).epsilon(1e-12));

    // Scaling both the rate and the normalizer leaves the utility unchanged.
    RewardParams doubled = params;
    doubled.r_max_bps *= 2.0;
    QosSample sample{0.3, 0.7 * params.r_max_bps, 40, 3, 0.0};
    QosSample scaled = sample;
    scaled.rate_bps *= 2.0;
    CHECK(utility(sample, params) == doctest::Approx(utility(scaled, doubled)).epsilon(1e-12));
}

TEST_CASE("reward indicators") {
    RewardParams params;
    QosSample sample{0.5, 0.4 * params.r_max_bps, 100, 0, 0.0};
    const double u = utility(sample, params);

    SUBCASE("past deadline yields zero") {
        sample.access_delay = sample.max_delay + 1;
        CHECK(reward(sample, params) == 0.0);
    }
    SUBCASE("rate below threshold yields zero") {
        sample.min_rate_bps = sample.rate_bps + 1.0;
        CHECK(reward(sample, params) == 0.0);
    }
    SUBCASE("both indicators pass: reward equals utility") {
        sample.access_delay = sample.max_delay;  // boundary inclusive
        CHECK(reward(sample, params) == doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("0 <= reward <= utility <= 1 over random samples") {
    RewardParams params;
    RngStream stream = derive_stream(5, "reward-prop");
    for (int i = 0; i < 5000; ++i) {
        QosSample sample;
        sample.value_of_info = uniform_double(stream);
        sample.rate_bps = uniform_in(stream, 0.0, 3.0 * params.r_max_bps);
        sample.max_delay = static_cast<int>(bounded_uint(stream, 300)) + 1;
        sample.access_delay = static_cast<long>(bounded_uint(stream, 400));
        sample.min_rate_bps = uniform_in(stream, 0.0, 2.0 * params.r_max_bps);
        const double u = utility(sample, params);
        const double r = reward(sample, params);
        CHECK(r >= 0.0);
        CHECK(r <= u + 1e-15);
        CHECK(u <= 1.0 + 1e-12);
    }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ionread/stats.hpp"

using namespace ionread;
using namespace ionread::stats;

TEST_CASE("poisson pmf") {
    CHECK(poisson_pmf(0, 3.7) == doctest::Approx(std::exp(-3.7)));
    CHECK(poisson_pmf(2, 1.0) == doctest::Approx(0.183940).epsilon(1e-5));
    CHECK(poisson_pmf(5, 0.0) == 0.0);

    double sum = 0.0;
    for (int n = 0; n <= 200; ++n) sum += poisson_pmf(n, 3.7);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // stable at large means
    CHECK(poisson_pmf(10000, 1e4) == doctest::Approx(0.0039893).epsilon(1e-4));
    CHECK_THROWS_AS(poisson_pmf(-1, 1.0), DomainError);
}

TEST_CASE("mixture pmf reductions") {
    MixtureSpec no_transition{1e5, 2e5, 0.0, 1e-4};
    for (int n = 0; n < 30; n += 7)
        CHECK(mixture_pmf(n, no_transition) ==
              doctest::Approx(poisson_pmf(n, 1e5 * 1e-4)).epsilon(1e-10));

    MixtureSpec equal_rates{1e5, 1e5, 300.0, 1e-4};
    for (int n = 0; n < 30; n += 7)
        CHECK(mixture_pmf(n, equal_rates) ==
              doctest::Approx(poisson_pmf(n, 1e5 * 1e-4)).epsilon(1e-8));
}

TEST_CASE("mixture pmf matches the closed forms at n = 0") {
    const auto rates = testutil::paper_rates();
    for (double t : testutil::log_grid(10e-9, 1.0, 25)) {
        MixtureSpec dark{rates.r_bg, rates.detected_bright + rates.r_bg, rates.r_b, t};
        CHECK(mixture_pmf(0, dark) ==
              doctest::Approx(p_zero_dark(t, rates)).epsilon(1e-9));
        MixtureSpec bright{rates.detected_bright + rates.r_bg, rates.r_bg, rates.r_d, t};
        CHECK(mixture_pmf(0, bright) ==
              doctest::Approx(p_zero_bright(t, rates)).epsilon(1e-9));
    }
}

TEST_CASE("mixture pmf normalizes") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        MixtureSpec spec{std::pow(10.0, 3.0 + 3.0 * unif(gen)),
                         std::pow(10.0, 3.0 + 3.0 * unif(gen)), 1e3 * unif(gen), 1e-4};
        const double mean = std::max(spec.r1, spec.r2) * spec.t;
        const auto n_max =
            static_cast<std::int64_t>(mean + 10.0 * std::sqrt(mean) + 20.0);
        double sum = 0.0;
        for (std::int64_t n = 0; n <= n_max; ++n) sum += mixture_pmf(n, spec);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("zero-photon probabilities, paper operating point") {
    const auto rates = testutil::paper_rates();
    CHECK(p_zero_dark(0.0, rates) == 1.0);
    CHECK(p_zero_bright(0.0, rates) == 1.0);

    RateSet no_pump = rates;
    no_pump.r_b = 0.0;
    CHECK(p_zero_dark(1e-3, no_pump) == doctest::Approx(std::exp(-4.2e-3)));

    RateSet pure_bright = rates;
    pure_bright.r_d = 0.0;
    pure_bright.r_bg = 0.0;
    CHECK(p_zero_bright(1e-5, pure_bright) == doctest::Approx(std::exp(-472e3 * 1e-5)));

    // 20 us operating point
    CHECK(p_zero_dark(20e-6, rates) == doctest::Approx(0.999623).epsilon(1e-6));
    CHECK(1.0 - p_zero_dark(20e-6, rates) == doctest::Approx(3.77e-4).epsilon(2e-3));
    CHECK(p_zero_bright(20e-6, rates) == doctest::Approx(8.0e-4).epsilon(2e-2));
}

TEST_CASE("zero-photon probabilities are monotone and bounded") {
    const auto rates = testutil::paper_rates();
    double prev_d = 1.0, prev_b = 1.0;
    for (double t : testutil::log_grid(1e-9, 1.0, 1000)) {
        const double pd = p_zero_dark(t, rates);
        const double pb = p_zero_bright(t, rates);
        CHECK(pd >= 0.0); CHECK(pd <= 1.0);
        CHECK(pb >= 0.0); CHECK(pb <= 1.0);
        CHECK(pd <= prev_d + 1e-15);
        CHECK(pb <= prev_b + 1e-15);
        prev_d = pd;
        prev_b = pb;
    }
}

TEST_CASE("removable singularity at eps R_o = R_b") {
    // approach the singular point from both sides and compare to the limit
    RateSet rates = RateSet::measured(100.0, 0.0, 100.0, 1.0);
    const double t = 1e-3;
    const double limit = p_zero_dark(t, rates);  // series branch
    for (double delta : {1e-6 * 100.0, -1e-6 * 100.0, 1e-4, -1e-4}) {
        RateSet nearby = rates;
        nearby.detected_bright = 100.0 + delta;
        nearby.r_o = nearby.detected_bright;
        CHECK(p_zero_dark(t, nearby) == doctest::Approx(limit).epsilon(1e-6));
    }
}

TEST_CASE("error curve") {
    const auto rates = testutil::paper_rates();
    PrepErrors no_prep{0.0, 0.0};

    auto at_zero = error_curve(rates, no_prep, {0.0});
    CHECK(at_zero[0].dark_error == 0.0);
    CHECK(at_zero[0].bright_error == 1.0);

    const auto grid = testutil::log_grid(1e-7, 1e-2, 50);
    const auto curve = error_curve(rates, PrepErrors{}, grid);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].dark_error >= curve[i - 1].dark_error - 1e-15);

    const auto at_500us = error_curve(rates, no_prep, {500e-6})[0];
    CHECK(at_500us.bright_error == doctest::Approx(7.2e-4).epsilon(3e-2));
    CHECK(at_500us.dark_error == doctest::Approx(2.1e-3).epsilon(3e-2));

    CHECK_THROWS_AS(error_curve(rates, PrepErrors{}, {2e-6, 1e-6}), DomainError);
}

TEST_CASE("average stop time") {
    RateSet zero;
    CHECK(avg_stop_time(zero, 20e-6) == doctest::Approx(20e-6));

    RateSet pure_bright = RateSet::measured(472e3, 0.0, 0.0, 0.0);
    CHECK(avg_stop_time(pure_bright, 1e-2, 1.0) ==
          doctest::Approx(1.0 / 472e3).epsilon(1e-3));

    const auto rates = testutil::paper_rates();
    const double avg = avg_stop_time(rates, 20e-6, 0.5);
    CHECK(avg > 10.5e-6);
    CHECK(avg < 11.5e-6);

    // nondecreasing in window, bounded by window
    double prev = 0.0;
    for (double w : testutil::log_grid(1e-6, 1e-3, 40)) {
        const double t = avg_stop_time(rates, w);
        CHECK(t <= w);
        CHECK(t >= prev - 1e-15);
        prev = t;
    }
}

TEST_CASE("window from target average time") {
    const auto rates = testutil::paper_rates();

    const auto at_zero = fidelity_at_avg_time(rates, PrepErrors{}, 0.0);
    CHECK(at_zero.avg_error == doctest::Approx(0.5).epsilon(1e-3));

    const auto headline = fidelity_at_avg_time(rates, PrepErrors{}, 11e-6);
    CHECK(headline.window > 15e-6);
    CHECK(headline.window < 30e-6);
    CHECK(headline.avg_error > 4e-4);
    CHECK(headline.avg_error < 9e-4);

    CHECK_THROWS_AS(fidelity_at_avg_time(rates, PrepErrors{}, 1.0, 0.5, 1e-3),
                    DomainError);
}

TEST_CASE("zero-background fidelity limit") {
    auto rates = testutil::paper_rates();
    rates.r_bg = 0.0;
    const auto best = minimize_avg_error(rates, PrepErrors{}, 1e-6, 1e-3);
    const double fidelity_pct = 100.0 * (1.0 - best.avg_error);
    CHECK(fidelity_pct == doctest::Approx(99.941).epsilon(0.0005));
}

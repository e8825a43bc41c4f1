#include <doctest.h>

#include <cmath>

#include "tradesim/bass.hpp"
#include "tradesim/numerics.hpp"

using namespace tradesim;

namespace {

// Independent oracle: integrate the differential form
// dF/dt = (p + q F)(1 - F) with classic RK4.
double ode_cdf(double p, double q, double t, int steps) {
    const double h = t / steps;
    double f = 0.0;
    const auto rate = [&](double y) { return (p + q * y) * (1.0 - y); };
    for (int i = 0; i < steps; ++i) {
        const double k1 = rate(f);
        const double k2 = rate(f + 0.5 * h * k1);
        const double k3 = rate(f + 0.5 * h * k2);
        const double k4 = rate(f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("bass");

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BassParams(0.0, 0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(BassParams(0.1, -0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(BassParams(0.1, 0.1, 0), std::invalid_argument);
    CHECK_NOTHROW(BassParams(0.1, 0.0, 1));  // pure innovation is allowed
}

TEST_CASE("cdf starts at zero") {
    RngState rng{3, 0};
    for (int rep = 0; rep < 20; ++rep) {
        const BassParams params(0.01 + rng.next_unit(), rng.next_unit(),
                                1 + (rng.next_u64() % 100));
        CHECK(bass_cdf(params, 0.0) == 0.0);
    }
}

TEST_CASE("cdf with q=0 reduces to the exponential distribution") {
    const BassParams params(0.1, 0.0, 5);
    CHECK(bass_cdf(params, 10.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("cdf matches the ode oracle") {
    const BassParams params(0.03, 0.38, 100);
    const double t = 6.192;
    CHECK(std::abs(bass_cdf(params, t) - ode_cdf(0.03, 0.38, t, 20000)) < 1e-6);
}

TEST_CASE("cdf is monotone and bounded, density nonnegative") {
    RngState rng{8, 0};
    for (int rep = 0; rep < 20; ++rep) {
        const BassParams params(0.01 + rng.next_unit(), rng.next_unit(), 10);
        double prev = 0.0;
        for (double t = 0.0; t <= 60.0; t += 0.25) {
            const double value = bass_cdf(params, t);
            CHECK(value >= prev);
            CHECK(value <= 1.0);
            CHECK(bass_density(params, t) >= 0.0);
            prev = value;
        }
    }
}

TEST_CASE("density starts at p and integrates to the cdf") {
    const BassParams params(0.03, 0.38, 100);
    CHECK(bass_density(params, 0.0) == params.p);
    const double integral =
        quadrature([&](double u) { return bass_density(params, u); }, 0.0, 20.0, 1e-10);
    CHECK(std::abs(integral - bass_cdf(params, 20.0)) < 1e-8);
}

TEST_CASE("density with q=0 is the exponential density") {
    const BassParams params(0.2, 0.0, 5);
    for (double t : {0.0, 0.5, 3.0, 11.0}) {
        CHECK(bass_density(params, t) ==
              doctest::Approx(params.p * std::exp(-params.p * t)).epsilon(1e-12));
    }
}

TEST_CASE("sales equals market potential times density") {
    CHECK(bass_sales(BassParams(0.03, 0.38, 100), 0.0) ==
          doctest::Approx(100 * 0.03).epsilon(1e-12));
    RngState rng{4, 0};
    for (int rep = 0; rep < 200; ++rep) {
        const BassParams params(0.01 + rng.next_unit(), rng.next_unit(),
                                1 + (rng.next_u64() % 10000));
        const double t = 50.0 * rng.next_unit();
        const double sales = bass_sales(params, t);
        const double via_density = params.m * bass_density(params, t);
        CHECK(std::abs(sales - via_density) <= 1e-10 * std::abs(sales));
    }
    // m = 1 makes the two curves identical
    const BassParams unit(0.05, 0.3, 1);
    for (double t : {0.0, 1.0, 7.5}) {
        CHECK(std::abs(bass_sales(unit, t) - bass_density(unit, t)) <=
              1e-10 * bass_sales(unit, t));
    }
}

TEST_CASE("sales peak matches the grid argmax and the analytic peak time") {
    const BassParams params(0.03, 0.38, 100);
    double best_t = 0.0;
    double best = -1.0;
    for (double t = 0.0; t <= 20.0; t += 1e-3) {
        const double s = bass_sales(params, t);
        if (s > best) {
            best = s;
            best_t = t;
        }
    }
    const double analytic = std::log(params.q / params.p) / (params.p + params.q);
    CHECK(std::abs(best_t - analytic) < 2e-3);
    CHECK(best_t == doctest::Approx(6.192).epsilon(1e-3));
}

TEST_CASE("arrivals at an unchanged time emit nothing") {
    const BassParams params(0.05, 0.3, 50);
    ArrivalState state(params);
    auto first = arrivals_between(state, 4.0);
    auto second = arrivals_between(first.state, 4.0);
    CHECK(second.count == 0);
    CHECK(second.state.fractional_carry == first.state.fractional_carry);
}

TEST_CASE("arrivals saturate at the market potential") {
    const BassParams params(0.03, 0.38, 1000);
    ArrivalState state(params);
    CHECK(arrivals_between(state, 1e7).count == 1000);
}

TEST_CASE("arrivals are partition invariant") {
    const BassParams params(0.04, 0.25, 123);

    // one step [0, 10] vs ten steps of 1
    std::int64_t single = arrivals_between(ArrivalState(params), 10.0).count;
    ArrivalState state(params);
    std::int64_t total = 0;
    for (int i = 1; i <= 10; ++i) {
        auto batch = arrivals_between(state, static_cast<double>(i));
        total += batch.count;
        state = batch.state;
    }
    CHECK(total == single);

    // random partitions against floor(m F(T))
    RngState rng{17, 0};
    for (int rep = 0; rep < 50; ++rep) {
        const BassParams random_params(0.01 + rng.next_unit(), rng.next_unit(),
                                       1 + (rng.next_u64() % 5000));
        const double horizon = 1.0 + 49.0 * rng.next_unit();
        ArrivalState cursor(random_params);
        std::int64_t sum = 0;
        double t = 0.0;
        while (t < horizon) {
            t = std::min(horizon, t + rng.next_unit() * 5.0);
            auto batch = arrivals_between(cursor, t);
            CHECK(batch.count >= 0);
            CHECK(batch.state.fractional_carry >= 0.0);
            CHECK(batch.state.fractional_carry < 1.0);
            sum += batch.count;
            cursor = batch.state;
        }
        const auto expected = static_cast<std::int64_t>(
            std::floor(random_params.m * bass_cdf(random_params, horizon)));
        CHECK(sum == expected);
    }
}

TEST_CASE("arrivals reject time going backwards") {
    ArrivalState state(BassParams(0.1, 0.1, 10));
    auto batch = arrivals_between(state, 5.0);
    CHECK_THROWS_AS(arrivals_between(batch.state, 4.0), std::invalid_argument);
}

TEST_SUITE_END();

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tradesim/numerics.hpp"

using namespace tradesim;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("rng stream matches the published splitmix64 vector") {
    RngState rng{0, 0};
    const std::uint64_t a = rng.next_u64();
    const std::uint64_t b = rng.next_u64();
    const std::uint64_t c = rng.next_u64();
    CHECK(a == 0xE220A8397B1DCDAFull);
    CHECK(b == 0x6E789E6AA1B965F4ull);
    CHECK(c == 0x06C45D188009454Full);
}

TEST_CASE("rng output is a pure function of seed and counter") {
    RngState first{7, 0};
    RngState second{7, 0};
    const Eigen::VectorXd ga = gaussian_sample(first, 2);
    const Eigen::VectorXd gb = gaussian_sample(second, 2);
    CHECK(ga == gb);
    CHECK(first.counter == second.counter);

    // Replaying from the advanced counter continues the same stream.
    RngState replay{7, first.counter};
    const Eigen::VectorXd more_a = gaussian_sample(first, 5);
    const Eigen::VectorXd more_b = gaussian_sample(replay, 5);
    CHECK(more_a == more_b);
}

TEST_CASE("gaussian sample moments") {
    RngState rng{42, 0};
    const Eigen::Index n = 1000000;
    const Eigen::VectorXd g = gaussian_sample(rng, n);
    const double mean = g.mean();
    const double var = (g.array() - mean).square().sum() / static_cast<double>(n - 1);
    // 3/sqrt(n) ~ 0.003; the asserted band is looser.
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("gaussian sample rejects n < 1") {
    RngState rng{1, 0};
    CHECK_THROWS_AS(gaussian_sample(rng, 0), std::invalid_argument);
}

TEST_CASE("cholesky identity and diagonal cases") {
    CHECK(cholesky(Eigen::MatrixXd::Identity(2, 2)) == Eigen::MatrixXd::Identity(2, 2));

    Eigen::MatrixXd d(2, 2);
    d << 4, 0, 0, 9;
    Eigen::MatrixXd expected(2, 2);
    expected << 2, 0, 0, 3;
    CHECK(cholesky(d) == expected);
}

TEST_CASE("cholesky reconstructs its input") {
    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 1, 2;
    const Eigen::MatrixXd lower = cholesky(m);
    CHECK(((lower * lower.transpose() - m).cwiseAbs().maxCoeff()) < 1e-9);
}

TEST_CASE("cholesky reconstructs random spd matrices up to 16x16") {
    RngState rng{5, 0};
    for (int rep = 0; rep < 50; ++rep) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_u64() % 16);
        Eigen::MatrixXd seed_lower = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                seed_lower(i, j) = rng.next_unit() - 0.5;
            }
            seed_lower(i, i) = 0.5 + rng.next_unit();
        }
        const Eigen::MatrixXd spd = seed_lower * seed_lower.transpose();
        const Eigen::MatrixXd lower = cholesky(spd);
        CHECK(((lower * lower.transpose() - spd).cwiseAbs().maxCoeff()) < 1e-9);
    }
}

TEST_CASE("cholesky failure modes") {
    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1, 2, 2, 1;
    CHECK_THROWS_AS(cholesky(indefinite), NotPositiveDefinite);

    Eigen::MatrixXd semidefinite(2, 2);
    semidefinite << 1, 0, 0, 0;
    CHECK_THROWS_AS(cholesky(semidefinite), NotPositiveDefinite);

    Eigen::MatrixXd skewed(2, 2);
    skewed << 1, 0.1, 0, 1;
    CHECK_THROWS_AS(cholesky(skewed), std::invalid_argument);

    CHECK_THROWS_AS(cholesky(Eigen::MatrixXd::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("log_det on diagonal matrices equals the product oracle") {
    CHECK(log_det(Eigen::MatrixXd::Identity(3, 3)) == 0.0);

    Eigen::MatrixXd d(2, 2);
    d << 4, 0, 0, 9;
    CHECK(log_det(d) == doctest::Approx(std::log(36.0)).epsilon(1e-12));
}

TEST_CASE("solve satisfies the linear system") {
    Eigen::VectorXd v(3);
    v << 1, -2, 0.5;
    CHECK(solve(Eigen::MatrixXd::Identity(3, 3), v) == v);

    Eigen::MatrixXd m(3, 3);
    m << 4, 1, 0, 1, 3, 1, 0, 1, 2;
    const Eigen::VectorXd x = solve(m, v);
    CHECK((m * x - v).norm() / v.norm() < 1e-8);

    CHECK_THROWS_AS(solve(m, Eigen::VectorXd::Zero(2)), DimensionMismatch);
}

TEST_CASE("quadrature analytic cases") {
    CHECK(quadrature([](double) { return 1.0; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quadrature([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const auto normal_pdf = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    CHECK(std::abs(quadrature(normal_pdf, -8.0, 8.0, 1e-9) - 1.0) < 1e-8);
}

TEST_CASE("quadrature rejects bad intervals and pathological integrands") {
    CHECK_THROWS_AS(quadrature([](double) { return 1.0; }, 1.0, 0.0, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadrature([](double) { return 1.0; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    // A jump at an off-grid point never meets a 1e-15 budget.
    const auto step = [](double x) { return x < std::numbers::pi / 4.0 ? 0.0 : 1.0; };
    CHECK_THROWS_AS(quadrature(step, 0.0, 1.0, 1e-15), NonConvergence);
}

TEST_CASE("fit_gaussian_summary midpoint example") {
    Eigen::MatrixXd samples(2, 2);
    samples << 0, 0, 2, 2;
    const GaussianSummary s = fit_gaussian_summary(samples);
    CHECK(s.mean[0] == 1.0);
    CHECK(s.mean[1] == 1.0);
}

TEST_CASE("fit_gaussian_summary regularizes constant columns") {
    Eigen::MatrixXd samples(4, 1);
    samples << 3, 3, 3, 3;
    const GaussianSummary s = fit_gaussian_summary(samples);
    CHECK(s.cov(0, 0) >= 1e-8);  // lambda floor, never zero
    CHECK_NOTHROW(cholesky(s.cov));
}

TEST_CASE("fit_gaussian_summary recovers an identity covariance") {
    RngState rng{9, 0};
    const Eigen::Index n = 100000;
    Eigen::MatrixXd samples(n, 2);
    samples.col(0) = gaussian_sample(rng, n);
    samples.col(1) = gaussian_sample(rng, n);
    const GaussianSummary s = fit_gaussian_summary(samples);
    CHECK(((s.cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff()) < 0.05);
}

TEST_CASE("fit_gaussian_summary covariance always passes cholesky") {
    RngState rng{11, 0};
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 20);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next_u64() % 6);
        Eigen::MatrixXd samples(n, m);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                // rank-deficient on purpose: column j repeats column 0
                samples(i, j) = j == 0 ? rng.next_unit() : samples(i, 0);
            }
        }
        const GaussianSummary s = fit_gaussian_summary(samples);
        CHECK(s.cov == s.cov.transpose());
        CHECK_NOTHROW(cholesky(s.cov));
    }
}

TEST_CASE("fit_gaussian_summary needs two observations") {
    CHECK_THROWS_AS(fit_gaussian_summary(Eigen::MatrixXd::Zero(1, 3)), TooFewSamples);
}

TEST_SUITE_END();

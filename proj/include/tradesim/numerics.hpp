#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "tradesim/errors.hpp"

namespace tradesim {

// Counter-based SplitMix64 stream (Steele, Lea & Flood 2014, Vigna's
// constants). The i-th output is a pure function of (seed, i), so a
// stream can be replayed from any (seed, counter) pair and two states
// with equal fields produce byte-identical sequences on every platform.
// Single-owner: pass by reference, never share across threads.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;

    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit();
};

// n i.i.d. standard normal draws via the Marsaglia polar transform.
// Draws are produced in pairs; for odd n the spare of the last pair is
// discarded, the counter still reflecting every uniform consumed.
Eigen::VectorXd gaussian_sample(RngState& rng, Eigen::Index n);

// Lower-triangular L with L L^T = m. Requires a square matrix that is
// symmetric within 1e-10 entrywise. Throws NotPositiveDefinite when a
// pivot is non-positive (degenerate covariance). All matrix algebra
// here is dense and sized for desk scale, 64x64 or so.
Eigen::MatrixXd cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m);

// log(det m) for symmetric positive definite m, via the Cholesky factor.
double log_det(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Solves m x = v for symmetric positive definite m.
Eigen::VectorXd solve(const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const Eigen::Ref<const Eigen::VectorXd>& v);

// Adaptive Simpson quadrature of f over [a, b] with estimated error
// <= tol. Throws NonConvergence once the bisection depth limit is hit.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol);

// Mean vector and regularized sample covariance of an observation set.
struct GaussianSummary {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    Eigen::Index dim() const { return mean.size(); }
};

// Fits mean and unbiased covariance to samples (one observation per row).
// The covariance is ridged with lambda = max(1e-8, 1e-10 * trace / m) so
// the result always admits a Cholesky factorization, even for constant
// or rank-deficient inputs. Throws TooFewSamples for fewer than 2 rows.
GaussianSummary fit_gaussian_summary(const Eigen::Ref<const Eigen::MatrixXd>& samples);

}  // namespace tradesim

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "tradesim/errors.hpp"
#include "tradesim/numerics.hpp"

namespace tradesim {

// A probability vector over k categories. Entries must be nonnegative
// and sum to 1 within 1e-12.
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(Eigen::VectorXd probs);

    const Eigen::VectorXd& probs() const { return probs_; }
    Eigen::Index size() const { return probs_.size(); }

private:
    Eigen::VectorXd probs_;
};

// Overlap coefficient rho in [0, 1] together with the distance -ln(rho).
// rho = 0 maps to an explicit +infinity distance, not an error: disjoint
// support is a legitimate comparison outcome.
struct Divergence {
    double coefficient;
    double distance;

    // The angle between the square-root probability vectors; rho = cos(angle).
    double angle() const;
};

// Builds a Divergence from a raw coefficient, clamping round-off
// excursions above 1 before taking the logarithm.
Divergence divergence_from_coefficient(double rho);

// Discrete overlap: rho = sum_i sqrt(a_i b_i). Zero-probability
// categories contribute zero. Throws DimensionMismatch on unequal k.
Divergence bc_discrete(const DiscreteDistribution& a, const DiscreteDistribution& b);

// Continuous overlap rho = integral of sqrt(pdf_a pdf_b) over the
// support, by adaptive quadrature. Each pdf must integrate to 1 within
// 1e-6 on [lo, hi].
Divergence bc_continuous(const std::function<double(double)>& pdf_a,
                         const std::function<double(double)>& pdf_b, double lo, double hi,
                         double tol = 1e-9);

// Closed form for two univariate normals:
//   D = 1/4 ln(1/4 (vp/vq + vq/vp + 2)) + 1/4 (mu_p - mu_q)^2 / (vp + vq).
// Throws NonPositiveVariance unless both variances are > 0.
Divergence bc_normal_1d(double mean_p, double var_p, double mean_q, double var_q);

// Closed form for two multivariate normals with pooled covariance
// S = (S1 + S2)/2:
//   D = 1/8 d^T S^{-1} d + 1/2 ln(det S / sqrt(det S1 det S2)),
// evaluated through the Cholesky-based log_det and solve.
Divergence bc_normal_mv(const GaussianSummary& p1, const GaussianSummary& p2);

// M-population overlap for discrete distributions:
//   rho = sum_j (prod_i ds[i][j])^{1/M}.
// Requires M >= 2 and equal category counts. At M = 2 the M-th root is
// taken with sqrt, so the result reduces bit-exactly to bc_discrete.
double bc_multi_population(const std::vector<DiscreteDistribution>& ds);

}  // namespace tradesim

#include "tradesim/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tradesim {

DiscreteDistribution::DiscreteDistribution(Eigen::VectorXd probs) : probs_(std::move(probs)) {
    if (probs_.size() < 1) {
        throw std::invalid_argument("DiscreteDistribution: needs at least one category");
    }
    if ((probs_.array() < 0.0).any()) {
        throw std::invalid_argument("DiscreteDistribution: probabilities must be >= 0");
    }
    if (std::abs(probs_.sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("DiscreteDistribution: probabilities must sum to 1");
    }
}

double Divergence::angle() const {
    return std::acos(std::clamp(coefficient, 0.0, 1.0));
}

Divergence divergence_from_coefficient(double rho) {
    rho = std::clamp(rho, 0.0, 1.0);
    const double d = rho > 0.0 ? -std::log(rho) : std::numeric_limits<double>::infinity();
    // -log of values just below 1 can round to -0.
    return {rho, d == 0.0 ? 0.0 : d};
}

Divergence bc_discrete(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("bc_discrete: category counts differ");
    }
    double rho = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        rho += std::sqrt(a.probs()[i] * b.probs()[i]);
    }
    return divergence_from_coefficient(rho);
}

Divergence bc_continuous(const std::function<double(double)>& pdf_a,
                         const std::function<double(double)>& pdf_b, double lo, double hi,
                         double tol) {
    const double mass_a = quadrature(pdf_a, lo, hi, tol);
    const double mass_b = quadrature(pdf_b, lo, hi, tol);
    if (std::abs(mass_a - 1.0) > 1e-6 || std::abs(mass_b - 1.0) > 1e-6) {
        throw std::invalid_argument("bc_continuous: pdfs must integrate to 1 on the support");
    }
    const double rho = quadrature(
        [&](double x) { return std::sqrt(pdf_a(x) * pdf_b(x)); }, lo, hi, tol);
    return divergence_from_coefficient(rho);
}

Divergence bc_normal_1d(double mean_p, double var_p, double mean_q, double var_q) {
    if (!(var_p > 0.0) || !(var_q > 0.0)) {
        throw NonPositiveVariance("bc_normal_1d: variances must be > 0");
    }
    const double ratio_term = 0.25 * std::log(0.25 * (var_p / var_q + var_q / var_p + 2.0));
    const double diff = mean_p - mean_q;
    const double mean_term = 0.25 * diff * diff / (var_p + var_q);
    // the closed form is nonnegative; round-off may dip just below zero
    const double d = std::max(0.0, ratio_term + mean_term);
    return {std::exp(-d), d};
}

Divergence bc_normal_mv(const GaussianSummary& p1, const GaussianSummary& p2) {
    if (p1.dim() != p2.dim()) {
        throw DimensionMismatch("bc_normal_mv: dimensions differ");
    }
    const Eigen::MatrixXd pooled = 0.5 * (p1.cov + p2.cov);
    const Eigen::VectorXd diff = p1.mean - p2.mean;
    const double mahalanobis = diff.dot(solve(pooled, diff));
    const double log_det_term =
        log_det(pooled) - 0.5 * (log_det(p1.cov) + log_det(p2.cov));
    const double d = std::max(0.0, 0.125 * mahalanobis + 0.5 * log_det_term);
    return {std::exp(-d), d};
}

double bc_multi_population(const std::vector<DiscreteDistribution>& ds) {
    if (ds.size() < 2) {
        throw std::invalid_argument("bc_multi_population: needs at least 2 populations");
    }
    const Eigen::Index k = ds.front().size();
    for (const auto& d : ds) {
        if (d.size() != k) {
            throw DimensionMismatch("bc_multi_population: category counts differ");
        }
    }
    const auto m = static_cast<double>(ds.size());
    double rho = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        double prod = 1.0;
        for (const auto& d : ds) {
            prod *= d.probs()[j];
        }
        rho += ds.size() == 2 ? std::sqrt(prod) : std::pow(prod, 1.0 / m);
    }
    return std::clamp(rho, 0.0, 1.0);
}

}  // namespace tradesim

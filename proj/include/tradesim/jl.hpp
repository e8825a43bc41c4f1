#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "tradesim/errors.hpp"

namespace tradesim {

// Witness that k meets the embedding bound
//   k >= 4 (eps^2/2 - eps^3/3)^{-1} ln n
// for an n-point set drawn from dimension d.
struct JlCertificate {
    double epsilon;
    Eigen::Index n;
    Eigen::Index k;
    Eigen::Index d;
};

// Smallest integer k satisfying the bound. Throws InvalidEpsilon for
// eps outside (0, 1) and TooFewPoints for n < 2.
Eigen::Index jl_min_dimension(double epsilon, Eigen::Index n);

// A seeded k x d matrix of i.i.d. standard normal entries applied as
// x -> (1/sqrt(k)) A x. Entries are filled row-major from the stream,
// so the map is reproducible from (d, certificate, seed) alone.
struct ProjectionMap {
    Eigen::MatrixXd matrix;  // k x d
    double scale;            // 1 / sqrt(k)
    std::uint64_t seed;
    JlCertificate certificate;

    Eigen::Index input_dim() const { return matrix.cols(); }
    Eigen::Index output_dim() const { return matrix.rows(); }
};

ProjectionMap make_map(Eigen::Index d, const JlCertificate& certificate, std::uint64_t seed);

// (1/sqrt(k)) A x. Throws DimensionMismatch if x is not d-dimensional.
Eigen::VectorXd project(const ProjectionMap& map, const Eigen::Ref<const Eigen::VectorXd>& x);

struct FindMapResult {
    ProjectionMap map;
    int attempts;
};

// Draws maps under seeds seed, seed+1, ... until one satisfies
//   (1 - eps) |u - v|^2 <= |f(u) - f(v)|^2 <= (1 + eps) |u - v|^2
// for every pair, and returns it with the attempt count. Duplicate
// points are allowed: the bound holds trivially at distance zero.
// Throws AttemptsExhausted after max_attempts failures.
FindMapResult find_map(const std::vector<Eigen::VectorXd>& points, double epsilon,
                       std::uint64_t seed, int max_attempts = 64);

// Brings two vectors of possibly different dimension into one space:
// zero-pads both to max(d1, d2), then pushes them through a single
// verified map with k = jl_min_dimension(epsilon, 2). Deterministic per
// seed; the projection is applied even when the dimensions already
// agree, so every comparison passes through the same pipeline.
std::pair<Eigen::VectorXd, Eigen::VectorXd> align_dimensions(
    const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
    double epsilon, std::uint64_t seed);

}  // namespace tradesim

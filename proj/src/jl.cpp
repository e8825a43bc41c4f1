#include "tradesim/jl.hpp"

#include <cmath>
#include <stdexcept>

#include "tradesim/numerics.hpp"

namespace tradesim {

Eigen::Index jl_min_dimension(double epsilon, Eigen::Index n) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw InvalidEpsilon("jl_min_dimension: epsilon must lie in (0, 1)");
    }
    if (n < 2) {
        throw TooFewPoints("jl_min_dimension: needs at least 2 points");
    }
    const double denom = epsilon * epsilon / 2.0 - epsilon * epsilon * epsilon / 3.0;
    const double bound = 4.0 / denom * std::log(static_cast<double>(n));
    return static_cast<Eigen::Index>(std::ceil(bound));
}

ProjectionMap make_map(Eigen::Index d, const JlCertificate& certificate, std::uint64_t seed) {
    if (d < 1) {
        throw std::invalid_argument("make_map: d must be >= 1");
    }
    const Eigen::Index k = certificate.k;
    RngState rng{seed, 0};
    const Eigen::VectorXd draws = gaussian_sample(rng, k * d);
    ProjectionMap map{Eigen::MatrixXd(k, d), 1.0 / std::sqrt(static_cast<double>(k)), seed,
                      certificate};
    for (Eigen::Index r = 0; r < k; ++r) {
        map.matrix.row(r) = draws.segment(r * d, d).transpose();
    }
    return map;
}

Eigen::VectorXd project(const ProjectionMap& map, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != map.input_dim()) {
        throw DimensionMismatch("project: vector dimension does not match map");
    }
    return map.scale * (map.matrix * x);
}

namespace {

bool distortion_holds(const ProjectionMap& map, const std::vector<Eigen::VectorXd>& points,
                      double epsilon) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Eigen::VectorXd fi = project(map, points[i]);
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double original = (points[i] - points[j]).squaredNorm();
            const double mapped = (fi - project(map, points[j])).squaredNorm();
            if (mapped < (1.0 - epsilon) * original || mapped > (1.0 + epsilon) * original) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

FindMapResult find_map(const std::vector<Eigen::VectorXd>& points, double epsilon,
                       std::uint64_t seed, int max_attempts) {
    if (points.size() < 2) {
        throw TooFewPoints("find_map: needs at least 2 points");
    }
    const Eigen::Index d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) {
            throw DimensionMismatch("find_map: points must share one dimension");
        }
    }
    const Eigen::Index k = jl_min_dimension(epsilon, static_cast<Eigen::Index>(points.size()));
    const JlCertificate certificate{epsilon, static_cast<Eigen::Index>(points.size()), k, d};
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ProjectionMap map = make_map(d, certificate, seed + static_cast<std::uint64_t>(attempt));
        if (distortion_holds(map, points, epsilon)) {
            return {std::move(map), attempt + 1};
        }
    }
    throw AttemptsExhausted("find_map: no admissible map within max_attempts");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> align_dimensions(
    const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
    double epsilon, std::uint64_t seed) {
    if (a.size() < 1 || b.size() < 1) {
        throw std::invalid_argument("align_dimensions: vectors must be non-empty");
    }
    const Eigen::Index d = std::max(a.size(), b.size());
    Eigen::VectorXd pa = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd pb = Eigen::VectorXd::Zero(d);
    pa.head(a.size()) = a;
    pb.head(b.size()) = b;
    const FindMapResult found = find_map({pa, pb}, epsilon, seed);
    return {project(found.map, pa), project(found.map, pb)};
}

}  // namespace tradesim

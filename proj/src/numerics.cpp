#include "tradesim/numerics.hpp"

#include <cmath>
#include <limits>

namespace tradesim {

std::uint64_t RngState::next_u64() {
    ++counter;
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double RngState::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd gaussian_sample(RngState& rng, Eigen::Index n) {
    if (n < 1) {
        throw std::invalid_argument("gaussian_sample: n must be >= 1");
    }
    Eigen::VectorXd out(n);
    Eigen::Index i = 0;
    while (i < n) {
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do {
            u = 2.0 * rng.next_unit() - 1.0;
            v = 2.0 * rng.next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double r = std::sqrt(-2.0 * std::log(s) / s);
        out[i++] = u * r;
        if (i < n) {
            out[i++] = v * r;
        }
    }
    return out;
}

namespace {

void require_symmetric_square(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionMismatch(std::string(who) + ": matrix must be square");
    }
    const double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (skew > 1e-10) {
        throw std::invalid_argument(std::string(who) + ": matrix not symmetric within 1e-10");
    }
}

Eigen::LLT<Eigen::MatrixXd> checked_llt(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                        const char* who) {
    require_symmetric_square(m, who);
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(who) + ": non-positive pivot");
    }
    return llt;
}

}  // namespace

Eigen::MatrixXd cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    return checked_llt(m, "cholesky").matrixL();
}

double log_det(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    const Eigen::MatrixXd lower = checked_llt(m, "log_det").matrixL();
    return 2.0 * lower.diagonal().array().log().sum();
}

Eigen::VectorXd solve(const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (v.size() != m.rows()) {
        throw DimensionMismatch("solve: vector length does not match matrix");
    }
    return checked_llt(m, "solve").solve(v);
}

namespace {

constexpr int kQuadratureMaxDepth = 48;

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    if (depth <= 0) {
        throw NonConvergence("quadrature: depth limit reached");
    }
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) {
        throw std::invalid_argument("quadrature: requires a < b");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("quadrature: requires tol > 0");
    }
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(fa, fm, fb, a, b);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, kQuadratureMaxDepth);
}

GaussianSummary fit_gaussian_summary(const Eigen::Ref<const Eigen::MatrixXd>& samples) {
    const Eigen::Index n = samples.rows();
    const Eigen::Index m = samples.cols();
    if (n < 2) {
        throw TooFewSamples("fit_gaussian_summary: needs at least 2 observations");
    }
    GaussianSummary out;
    out.mean = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - out.mean.transpose();
    Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(n - 1);
    cov = 0.5 * (cov + cov.transpose().eval());  // kill round-off skew
    const double lambda =
        std::max(1e-8, 1e-10 * cov.trace() / static_cast<double>(m));
    cov.diagonal().array() += lambda;
    out.cov = cov;
    return out;
}

}  // namespace tradesim

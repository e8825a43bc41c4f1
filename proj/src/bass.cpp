#include "tradesim/bass.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tradesim {

BassParams::BassParams(double p, double q, double m) : p(p), q(q), m(m) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("BassParams: p must be > 0");
    }
    if (!(q >= 0.0)) {
        throw std::invalid_argument("BassParams: q must be >= 0");
    }
    if (!(m >= 1.0)) {
        throw std::invalid_argument("BassParams: m must be >= 1");
    }
}

namespace {

void require_nonnegative_time(double t, const char* who) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument(std::string(who) + ": t must be >= 0");
    }
}

}  // namespace

double bass_cdf(const BassParams& params, double t) {
    require_nonnegative_time(t, "bass_cdf");
    const double decay = std::exp(-(params.p + params.q) * t);
    return (1.0 - decay) / (1.0 + (params.q / params.p) * decay);
}

double bass_density(const BassParams& params, double t) {
    require_nonnegative_time(t, "bass_density");
    const double ratio = params.q / params.p;
    const double decay = std::exp(-(params.p + params.q) * t);
    const double denom = 1.0 + ratio * decay;
    const double cum = (1.0 - decay) / denom;
    // 1 - F evaluated without the subtraction, which loses the decay
    // term once F rounds to 1.
    const double survival = decay * (1.0 + ratio) / denom;
    return (params.p + params.q * cum) * survival;
}

double bass_sales(const BassParams& params, double t) {
    require_nonnegative_time(t, "bass_sales");
    const double pq = params.p + params.q;
    const double decay = std::exp(-pq * t);
    const double denom = 1.0 + (params.q / params.p) * decay;
    return params.m * (pq * pq / params.p) * decay / (denom * denom);
}

ArrivalBatch arrivals_between(const ArrivalState& state, double t_next) {
    if (!(t_next >= state.last_t)) {
        throw std::invalid_argument("arrivals_between: t_next must be >= last_t");
    }
    const double total_next = state.params.m * bass_cdf(state.params, t_next);
    const double total_last = state.params.m * bass_cdf(state.params, state.last_t);
    const auto count = static_cast<std::int64_t>(std::floor(total_next) - std::floor(total_last));
    ArrivalState next = state;
    next.last_t = t_next;
    next.fractional_carry = total_next - std::floor(total_next);
    return {count, next};
}

}  // namespace tradesim

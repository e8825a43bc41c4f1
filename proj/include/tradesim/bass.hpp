#pragma once

#include <cstdint>

#include "tradesim/errors.hpp"

namespace tradesim {

// Adoption-curve parameters, interpreted per simulation tick. p must be
// strictly positive: the closed form of the installed-base fraction
// divides by it. q = 0 degenerates to a pure exponential process.
struct BassParams {
    double p;  // innovation coefficient, per tick
    double q;  // imitation coefficient, per tick
    double m;  // ultimate market potential, items

    BassParams(double p, double q, double m);
};

// Installed-base fraction F(t) = (1 - e^{-(p+q)t}) / (1 + (q/p) e^{-(p+q)t}).
// Monotone nondecreasing, F(0) = 0, limit 1.
double bass_cdf(const BassParams& params, double t);

// Adoption density f(t) = (p + q F(t)) (1 - F(t)).
double bass_density(const BassParams& params, double t);

// Sales rate from the independent closed form
//   S(t) = m (p+q)^2/p * e^{-(p+q)t} / (1 + (q/p) e^{-(p+q)t})^2,
// kept as a separate algebraic route from m * bass_density so the two
// can be checked against each other.
double bass_sales(const BassParams& params, double t);

// Discretization state converting cumulative adoption to integer item
// counts. The carry holds the un-emitted fractional adopter mass.
struct ArrivalState {
    BassParams params;
    double last_t = 0.0;
    double fractional_carry = 0.0;

    explicit ArrivalState(BassParams p) : params(p) {}
};

struct ArrivalBatch {
    std::int64_t count;
    ArrivalState state;
};

// Number of whole items arriving in (state.last_t, t_next]. Counts are
// emitted as floor(m F(t_next)) - floor(m F(last_t)), which telescopes:
// summing over any partition of [0, T] gives exactly floor(m F(T)).
ArrivalBatch arrivals_between(const ArrivalState& state, double t_next);

}  // namespace tradesim

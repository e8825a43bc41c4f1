#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tradesim/errors.hpp"

namespace tradesim {

struct PriceTick {
    std::uint64_t index;
    double price;  // > 0

    friend bool operator==(const PriceTick&, const PriceTick&) = default;
};

struct PriceSeries {
    std::string symbol;
    std::vector<PriceTick> ticks;  // indices strictly increasing

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

// Geometric Brownian motion per tick:
//   S_{t+1} = S_t exp((mu - sigma^2/2) + sigma Z_t).
struct GbmParams {
    double s0;
    double mu;
    double sigma;
    Eigen::Index horizon;  // number of steps; the series has horizon+1 ticks

    GbmParams(double s0, double mu, double sigma, Eigen::Index horizon);
};

PriceSeries generate_gbm(const GbmParams& params, std::uint64_t seed,
                         std::string symbol = "GBM");

// CSV schema: header line "index,price", then one row per tick with an
// unsigned integer index and a positive decimal price, '\n' endings.
// Prices are written with shortest round-trip formatting so that
// ingest_csv(write_csv(s)) == s exactly.
PriceSeries ingest_csv(const std::filesystem::path& path);
void write_csv(const PriceSeries& series, const std::filesystem::path& path);

// Log returns ln(S_{t+1} / S_t); length = ticks - 1. Throws TooFewTicks
// for series shorter than 2.
Eigen::VectorXd to_return_series(const PriceSeries& series);

}  // namespace tradesim

#include "tradesim/market.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "tradesim/numerics.hpp"

namespace tradesim {

GbmParams::GbmParams(double s0, double mu, double sigma, Eigen::Index horizon)
    : s0(s0), mu(mu), sigma(sigma), horizon(horizon) {
    if (!(s0 > 0.0)) {
        throw std::invalid_argument("GbmParams: s0 must be > 0");
    }
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("GbmParams: sigma must be >= 0");
    }
    if (horizon < 1) {
        throw std::invalid_argument("GbmParams: horizon must be >= 1");
    }
}

PriceSeries generate_gbm(const GbmParams& params, std::uint64_t seed, std::string symbol) {
    RngState rng{seed, 0};
    const Eigen::VectorXd shocks = gaussian_sample(rng, params.horizon);
    PriceSeries series{std::move(symbol), {}};
    series.ticks.reserve(params.horizon + 1);
    double price = params.s0;
    series.ticks.push_back({0, price});
    const double drift = params.mu - 0.5 * params.sigma * params.sigma;
    for (Eigen::Index t = 0; t < params.horizon; ++t) {
        price *= std::exp(drift + params.sigma * shocks[t]);
        series.ticks.push_back({static_cast<std::uint64_t>(t + 1), price});
    }
    return series;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

PriceSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("ingest_csv: cannot open " + path.string(), 0);
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("ingest_csv: empty file", 1);
    }
    ++line_no;
    if (line == "index,price\r") {
        line.pop_back();
    }
    if (line != "index,price") {
        throw ParseError("ingest_csv: expected header 'index,price'", line_no);
    }
    PriceSeries series{path.stem().string(), {}};
    bool have_prev = false;
    std::uint64_t prev_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("ingest_csv: missing comma", line_no);
        }
        std::uint64_t index = 0;
        const char* ib = line.data();
        const char* ie = line.data() + comma;
        auto ir = std::from_chars(ib, ie, index);
        if (ir.ec != std::errc{} || ir.ptr != ie) {
            throw ParseError("ingest_csv: bad index field", line_no);
        }
        double price = 0.0;
        const char* pb = line.data() + comma + 1;
        const char* pe = line.data() + line.size();
        auto pr = std::from_chars(pb, pe, price);
        if (pr.ec != std::errc{} || pr.ptr != pe) {
            throw ParseError("ingest_csv: bad price field", line_no);
        }
        if (!(price > 0.0)) {
            throw NonPositivePrice("ingest_csv: price must be > 0", line_no);
        }
        if (have_prev && index <= prev_index) {
            throw NonMonotoneIndex("ingest_csv: index must be strictly increasing", line_no);
        }
        series.ticks.push_back({index, price});
        prev_index = index;
        have_prev = true;
    }
    return series;
}

void write_csv(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_csv: cannot open " + path.string());
    }
    out << "index,price\n";
    for (const auto& tick : series.ticks) {
        out << tick.index << ',' << format_double(tick.price) << '\n';
    }
}

Eigen::VectorXd to_return_series(const PriceSeries& series) {
    if (series.ticks.size() < 2) {
        throw TooFewTicks("to_return_series: needs at least 2 ticks");
    }
    Eigen::VectorXd returns(series.ticks.size() - 1);
    for (std::size_t i = 0; i + 1 < series.ticks.size(); ++i) {
        returns[static_cast<Eigen::Index>(i)] =
            std::log(series.ticks[i + 1].price / series.ticks[i].price);
    }
    return returns;
}

}  // namespace tradesim

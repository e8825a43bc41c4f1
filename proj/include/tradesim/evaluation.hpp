#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "tradesim/divergence.hpp"
#include "tradesim/errors.hpp"

namespace tradesim {

enum class TradeDirection { Long, Short, Flat };

// One closed position. The loss bound is the loss the agent declared
// itself willing to absorb before the trade closed.
struct TradeRecord {
    double open_t = 0.0;
    double close_t = 0.0;
    TradeDirection direction = TradeDirection::Flat;
    double declared_loss_bound = 0.0;  // >= 0
    double realized_pnl = 0.0;
};

// Equity curve with its log-return series; returns[i] = ln(e[i+1]/e[i]).
struct TrackRecord {
    Eigen::VectorXd equity;
    Eigen::VectorXd returns;
    std::vector<TradeRecord> trades;
};

// Builds a record from an equity curve, deriving the return series.
// Equity must be positive throughout.
TrackRecord make_track_record(Eigen::VectorXd equity, std::vector<TradeRecord> trades = {});

// Per-tick Sharpe ratio mean(excess)/std(excess) with the unbiased
// sample deviation; no annualization. Throws ZeroVariance when the
// excess returns are constant.
double sharpe(const Eigen::Ref<const Eigen::VectorXd>& returns, double risk_free_per_tick);

// Largest peak-to-trough equity fraction max_t (peak_t - e_t)/peak_t,
// in [0, 1).
double max_drawdown(const Eigen::Ref<const Eigen::VectorXd>& equity);

// Historical value at risk: -(empirical quantile of returns at
// 1 - level), floored at 0. Quantiles interpolate order statistics
// linearly at rank h = (n-1)p. Requires at least 20 returns.
double value_at_risk(const Eigen::Ref<const Eigen::VectorXd>& returns, double level);

enum class TradeQuality { Good, Bad };

struct TradeClassification {
    TradeQuality quality;
    // loss / declared bound, when the loss exceeded the bound; 0 otherwise.
    double deviation_ratio;
};

// A profitable trade is good; a loss within its declared bound is good
// (the loss was planned for); a loss exceeding the bound is bad, with
// the overshoot reported as loss/bound.
TradeClassification classify_trade(const TradeRecord& trade);

struct MetricTriple {
    double sharpe;
    double max_drawdown;
    double var_95;
};

// How strict the comparison is: the distance cutoff plus one acceptance
// band per headline metric.
struct TuringThresholds {
    double distance = 0.05;
    double sharpe_band = 0.5;
    double mdd_band = 0.1;
    double var_band = 0.02;
};

enum class TuringVerdict { Indistinguishable, Distinguishable };

struct TuringReport {
    MetricTriple metrics_a;
    MetricTriple metrics_b;
    Divergence pnl_distance;
    TuringVerdict verdict;
    TuringThresholds thresholds;
};

// Quantitative two-record comparison: fits a univariate normal to each
// return series, takes the closed-form distance between them, and
// combines it with the metric gaps. Indistinguishable iff the distance
// is within threshold and every metric gap lies inside its band.
// Requires at least 30 returns per record. Symmetric in (a, b).
TuringReport turing_test(const TrackRecord& a, const TrackRecord& b,
                         const TuringThresholds& thresholds = {});

// Ranking score sharpe - max_drawdown - var_95. A degenerate record
// (constant returns) scores -infinity and ranks last.
double composite_score(const TrackRecord& record);

struct IntervalOutcome {
    double lo;
    double hi;
    double realized;
};

// Fraction of realized values falling inside their declared intervals.
// Throws NoAnswers on an empty list.
double calibration(const std::vector<IntervalOutcome>& outcomes);

std::string to_string(TradeDirection d);
std::string to_string(TuringVerdict v);

}  // namespace tradesim

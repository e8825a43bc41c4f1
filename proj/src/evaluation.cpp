#include "tradesim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tradesim/numerics.hpp"

namespace tradesim {

TrackRecord make_track_record(Eigen::VectorXd equity, std::vector<TradeRecord> trades) {
    if (equity.size() < 1) {
        throw std::invalid_argument("make_track_record: equity must be non-empty");
    }
    if ((equity.array() <= 0.0).any()) {
        throw std::invalid_argument("make_track_record: equity must stay positive");
    }
    TrackRecord record{std::move(equity), Eigen::VectorXd(0), std::move(trades)};
    if (record.equity.size() > 1) {
        record.returns.resize(record.equity.size() - 1);
        for (Eigen::Index i = 0; i + 1 < record.equity.size(); ++i) {
            record.returns[i] = std::log(record.equity[i + 1] / record.equity[i]);
        }
    }
    return record;
}

double sharpe(const Eigen::Ref<const Eigen::VectorXd>& returns, double risk_free_per_tick) {
    if (returns.size() < 2) {
        throw TooFewReturns("sharpe: needs at least 2 returns");
    }
    const Eigen::ArrayXd excess = returns.array() - risk_free_per_tick;
    const double mean = excess.mean();
    const double var =
        (excess - mean).square().sum() / static_cast<double>(returns.size() - 1);
    if (!(var > 0.0)) {
        throw ZeroVariance("sharpe: constant excess returns");
    }
    return mean / std::sqrt(var);
}

double max_drawdown(const Eigen::Ref<const Eigen::VectorXd>& equity) {
    if (equity.size() < 1) {
        throw std::invalid_argument("max_drawdown: equity must be non-empty");
    }
    if ((equity.array() <= 0.0).any()) {
        throw std::invalid_argument("max_drawdown: equity must stay positive");
    }
    double peak = equity[0];
    double worst = 0.0;
    for (Eigen::Index i = 0; i < equity.size(); ++i) {
        peak = std::max(peak, equity[i]);
        worst = std::max(worst, (peak - equity[i]) / peak);
    }
    return worst;
}

double value_at_risk(const Eigen::Ref<const Eigen::VectorXd>& returns, double level) {
    if (returns.size() < 20) {
        throw TooFewReturns("value_at_risk: needs at least 20 returns");
    }
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::invalid_argument("value_at_risk: level must lie in (0, 1)");
    }
    std::vector<double> sorted(returns.data(), returns.data() + returns.size());
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * (1.0 - level);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double quantile = sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
    return std::max(0.0, -quantile);
}

TradeClassification classify_trade(const TradeRecord& trade) {
    if (trade.realized_pnl >= 0.0) {
        return {TradeQuality::Good, 0.0};
    }
    const double loss = -trade.realized_pnl;
    if (loss <= trade.declared_loss_bound) {
        return {TradeQuality::Good, 0.0};
    }
    const double ratio = trade.declared_loss_bound > 0.0
                             ? loss / trade.declared_loss_bound
                             : std::numeric_limits<double>::infinity();
    return {TradeQuality::Bad, ratio};
}

namespace {

MetricTriple metrics_of(const TrackRecord& record) {
    return {sharpe(record.returns, 0.0), max_drawdown(record.equity),
            value_at_risk(record.returns, 0.95)};
}

}  // namespace

TuringReport turing_test(const TrackRecord& a, const TrackRecord& b,
                         const TuringThresholds& thresholds) {
    if (a.returns.size() < 30 || b.returns.size() < 30) {
        throw TooFewReturns("turing_test: both records need at least 30 returns");
    }
    const GaussianSummary sa = fit_gaussian_summary(a.returns);
    const GaussianSummary sb = fit_gaussian_summary(b.returns);
    const Divergence distance =
        bc_normal_1d(sa.mean[0], sa.cov(0, 0), sb.mean[0], sb.cov(0, 0));
    const MetricTriple ma = metrics_of(a);
    const MetricTriple mb = metrics_of(b);
    const bool close = distance.distance <= thresholds.distance &&
                       std::abs(ma.sharpe - mb.sharpe) <= thresholds.sharpe_band &&
                       std::abs(ma.max_drawdown - mb.max_drawdown) <= thresholds.mdd_band &&
                       std::abs(ma.var_95 - mb.var_95) <= thresholds.var_band;
    return {ma, mb, distance,
            close ? TuringVerdict::Indistinguishable : TuringVerdict::Distinguishable,
            thresholds};
}

double composite_score(const TrackRecord& record) {
    try {
        const MetricTriple m = metrics_of(record);
        return m.sharpe - m.max_drawdown - m.var_95;
    } catch (const ZeroVariance&) {
        return -std::numeric_limits<double>::infinity();
    }
}

double calibration(const std::vector<IntervalOutcome>& outcomes) {
    if (outcomes.empty()) {
        throw NoAnswers("calibration: no answers to score");
    }
    std::size_t inside = 0;
    for (const auto& o : outcomes) {
        if (o.realized >= o.lo && o.realized <= o.hi) {
            ++inside;
        }
    }
    return static_cast<double>(inside) / static_cast<double>(outcomes.size());
}

std::string to_string(TradeDirection d) {
    switch (d) {
        case TradeDirection::Long: return "Long";
        case TradeDirection::Short: return "Short";
        case TradeDirection::Flat: return "Flat";
    }
    return "Flat";
}

std::string to_string(TuringVerdict v) {
    return v == TuringVerdict::Indistinguishable ? "Indistinguishable" : "Distinguishable";
}

}  // namespace tradesim

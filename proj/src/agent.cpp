#include "tradesim/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tradesim/jl.hpp"

namespace tradesim {

void AgentParams::validate() const {
    if (!(band_lo >= 0.0) || !(band_hi > band_lo)) {
        throw std::invalid_argument("AgentParams: requires 0 <= band_lo < band_hi");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("AgentParams: epsilon must lie in (0, 1)");
    }
    if (!(buy_z > 0.0) || !(sell_z > 0.0)) {
        throw std::invalid_argument("AgentParams: thresholds must be > 0");
    }
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw std::invalid_argument("AgentParams: confidence must lie in (0, 1)");
    }
    if (min_connected < 1) {
        throw std::invalid_argument("AgentParams: min_connected must be >= 1");
    }
    if (window < 2) {
        throw std::invalid_argument("AgentParams: window must be >= 2");
    }
    if (!horizon_class.empty() && horizon_class != "short" && horizon_class != "medium" &&
        horizon_class != "long") {
        throw std::invalid_argument("AgentParams: horizon_class must be short, medium or long");
    }
    if (!objective.empty() && objective != "conservative" && objective != "aggressive") {
        throw std::invalid_argument("AgentParams: objective must be conservative or aggressive");
    }
}

namespace {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Standard normal quantile by bisection; plenty for per-decision use.
double normal_quantile(double p) {
    double lo = -12.0;
    double hi = 12.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Eigen::MatrixXd as_column(const Eigen::Ref<const Eigen::VectorXd>& v) {
    return v;
}

}  // namespace

TraderAgent::TraderAgent(AgentParams params)
    : params_(std::move(params)), arrivals_(params_.bass) {
    params_.validate();
}

InfoElement TraderAgent::build_element(double t,
                                       const Eigen::Ref<const Eigen::VectorXd>& features,
                                       bool taught) const {
    return {next_id_, t, features, fit_gaussian_summary(as_column(features)), taught};
}

std::vector<InfoElement> TraderAgent::tick(
    double t, const Eigen::Ref<const Eigen::VectorXd>& observed_returns) {
    if (t < arrivals_.last_t) {
        throw std::invalid_argument("tick: time must not go backwards");
    }
    if (observed_returns.size() < 2) {
        return {};  // nothing to snapshot yet; the arrival backlog waits
    }
    const ArrivalBatch batch = arrivals_between(arrivals_, t);
    arrivals_ = batch.state;
    std::vector<InfoElement> created;
    created.reserve(static_cast<std::size_t>(batch.count));
    const Eigen::Index len = std::min<Eigen::Index>(params_.window, observed_returns.size());
    for (std::int64_t j = 0; j < batch.count; ++j) {
        // j-th arrival looks one step further into the past, always
        // snapshotting a full-length window; bursts deeper than the
        // history reuse the oldest window.
        const Eigen::Index start = std::max<Eigen::Index>(
            0, observed_returns.size() - len - static_cast<Eigen::Index>(j));
        created.push_back(build_element(t, observed_returns.segment(start, len), false));
        ++next_id_;
    }
    store_.insert(store_.end(), created.begin(), created.end());
    return created;
}

const Divergence& TraderAgent::pair_divergence(std::size_t i, std::size_t j) const {
    const auto key = std::make_pair(store_[i].id, store_[j].id);
    const auto found = pair_cache_.find(key);
    if (found != pair_cache_.end()) {
        return found->second;
    }
    // Equal-dimension gate: both windows must admit one shared
    // distortion-verified map before their summaries are compared.
    align_dimensions(store_[i].features, store_[j].features, params_.epsilon, params_.seed);
    const Divergence d = bc_normal_mv(store_[i].summary, store_[j].summary);
    return pair_cache_.emplace(key, d).first->second;
}

ConnectionGraph TraderAgent::link() const {
    if (store_.size() < 2) {
        throw TooFewElements("link: needs at least 2 stored elements");
    }
    ConnectionGraph graph;
    graph.nodes.reserve(store_.size());
    for (const auto& e : store_) {
        graph.nodes.push_back(e.id);
    }
    for (std::size_t i = 0; i < store_.size(); ++i) {
        for (std::size_t j = i + 1; j < store_.size(); ++j) {
            const Divergence& d = pair_divergence(i, j);
            if (!std::isfinite(d.distance)) {
                continue;
            }
            if (d.distance >= params_.band_lo && d.distance <= params_.band_hi) {
                graph.edges.push_back({store_[i].id, store_[j].id, d.distance, d.coefficient});
            }
        }
    }
    return graph;
}

Answer TraderAgent::decide(const ConnectionGraph& graph,
                           const Eigen::Ref<const Eigen::VectorXd>& latest_window) const {
    Answer dont_know;
    dont_know.verdict = Verdict::DontKnow;
    dont_know.learning_request = true;
    if (latest_window.size() < 2) {
        return dont_know;
    }
    const GaussianSummary query = fit_gaussian_summary(as_column(latest_window));
    std::vector<const InfoElement*> lessons;
    for (const auto& e : store_) {
        if (e.taught && bc_normal_mv(e.summary, query).distance <= params_.band_hi) {
            lessons.push_back(&e);
        }
    }
    const bool enough_edges =
        graph.edges.size() >= static_cast<std::size_t>(params_.min_connected);
    if (!enough_edges && lessons.empty()) {
        return dont_know;
    }

    std::map<std::uint64_t, double> weight_by_id;
    Answer answer;
    if (enough_edges) {
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            weight_by_id[graph.edges[e].a] += graph.edges[e].strength;
            weight_by_id[graph.edges[e].b] += graph.edges[e].strength;
            answer.basis.push_back(e);
        }
    }
    for (const auto* lesson : lessons) {
        weight_by_id[lesson->id] += 1.0;  // a lesson enters at full strength
    }

    double total = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    for (const auto& e : store_) {
        const auto found = weight_by_id.find(e.id);
        if (found == weight_by_id.end()) {
            continue;
        }
        const double w = found->second;
        total += w;
        mean += w * e.summary.mean[0];
        variance += w * e.summary.cov(0, 0);
    }
    mean /= total;
    variance /= total;
    const double n_eff = total;
    const double sd = std::sqrt(variance);

    const double z = mean / (sd / std::sqrt(n_eff));
    if (z > params_.buy_z) {
        answer.verdict = Verdict::Buy;
    } else if (z < -params_.sell_z) {
        answer.verdict = Verdict::Sell;
    } else {
        answer.verdict = Verdict::Hold;
    }
    const double quantile = normal_quantile(0.5 * (1.0 + params_.confidence));
    const double half = quantile * sd * std::sqrt(1.0 + 1.0 / n_eff);
    answer.ci_lo = mean - half;
    answer.ci_hi = mean + half;
    return answer;
}

void TraderAgent::inject(const Eigen::Ref<const Eigen::VectorXd>& features) {
    store_.push_back(build_element(arrivals_.last_t, features, true));
    ++next_id_;
}

void TraderAgent::teach(const Eigen::Ref<const Eigen::VectorXd>& window,
                        double realized_return) {
    if (window.size() < 1) {
        throw std::invalid_argument("teach: window must be non-empty");
    }
    Eigen::VectorXd features(window.size() + 1);
    features.head(window.size()) = window;
    features[window.size()] = realized_return;
    inject(features);
}

void TraderAgent::teach(const Eigen::Ref<const Eigen::VectorXd>& window, Verdict) {
    if (window.size() < 2) {
        throw std::invalid_argument("teach: window needs at least 2 returns");
    }
    inject(window);
}

SimulationResult run_agent(const AgentParams& params, const PriceSeries& series) {
    params.validate();
    const Eigen::VectorXd returns = to_return_series(series);
    const Eigen::Index steps = returns.size();

    TraderAgent agent(params);
    Eigen::VectorXd equity(steps + 1);
    equity[0] = 1.0;

    ConnectionGraph graph;
    std::size_t linked_store_size = 0;

    SimulationResult result;
    result.log.reserve(static_cast<std::size_t>(steps));

    std::vector<TradeRecord> trades;
    int position = 0;
    TradeRecord open;
    for (Eigen::Index t = 0; t < steps; ++t) {
        agent.tick(static_cast<double>(t), returns.head(t));
        if (agent.store().size() >= 2 && agent.store().size() != linked_store_size) {
            graph = agent.link();
            linked_store_size = agent.store().size();
        }
        const Eigen::Index len = std::min<Eigen::Index>(params.window, t);
        const Answer answer = agent.decide(graph, returns.segment(t - len, len));

        int wanted = 0;
        if (answer.verdict == Verdict::Buy) {
            wanted = 1;
        } else if (answer.verdict == Verdict::Sell) {
            wanted = -1;
        }
        if (position != 0 && wanted != position) {
            open.close_t = static_cast<double>(t);
            trades.push_back(open);
            position = 0;
        }
        if (position == 0 && wanted != 0) {
            open = TradeRecord{};
            open.open_t = static_cast<double>(t);
            open.direction = wanted > 0 ? TradeDirection::Long : TradeDirection::Short;
            open.declared_loss_bound =
                wanted > 0 ? std::max(0.0, -answer.ci_lo) : std::max(0.0, answer.ci_hi);
            position = wanted;
        }

        const double r = returns[t];
        equity[t + 1] = equity[t] * std::exp(position * r);
        if (position != 0) {
            open.realized_pnl += position * r;
        }
        result.log.push_back({static_cast<double>(t), answer, r});
    }
    if (position != 0) {
        open.close_t = static_cast<double>(steps);
        trades.push_back(open);
    }
    result.record = make_track_record(std::move(equity), std::move(trades));
    return result;
}

std::vector<SweepEntry> sweep(const std::vector<AgentParams>& params_list,
                              const PriceSeries& series) {
    if (params_list.empty()) {
        throw std::invalid_argument("sweep: needs at least one parameter set");
    }
    std::vector<SweepEntry> entries;
    entries.reserve(params_list.size());
    for (std::size_t i = 0; i < params_list.size(); ++i) {
        SimulationResult sim = run_agent(params_list[i], series);
        const double score = composite_score(sim.record);
        entries.push_back({i, params_list[i], std::move(sim.record), score});
    }
    auto risk_of = [](const SweepEntry& e) {
        try {
            return value_at_risk(e.record.returns, 0.95);
        } catch (const TooFewReturns&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::stable_sort(entries.begin(), entries.end(),
                     [&](const SweepEntry& a, const SweepEntry& b) {
                         if (a.score != b.score) {
                             return a.score > b.score;
                         }
                         return risk_of(a) < risk_of(b);
                     });
    return entries;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Buy: return "Buy";
        case Verdict::Sell: return "Sell";
        case Verdict::Hold: return "Hold";
        case Verdict::DontKnow: return "DontKnow";
    }
    return "DontKnow";
}

}  // namespace tradesim

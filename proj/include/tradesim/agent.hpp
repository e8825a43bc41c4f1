#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tradesim/bass.hpp"
#include "tradesim/divergence.hpp"
#include "tradesim/errors.hpp"
#include "tradesim/evaluation.hpp"
#include "tradesim/market.hpp"
#include "tradesim/numerics.hpp"

namespace tradesim {

struct AgentParams {
    BassParams bass;           // information arrival process
    double band_lo = 0.05;     // curiosity band on pair distance
    double band_hi = 1.0;
    double epsilon = 0.5;      // alignment distortion budget
    double buy_z = 1.0;        // z thresholds on the pooled estimate
    double sell_z = 1.0;
    double confidence = 0.95;  // interval level
    int min_connected = 3;     // edge evidence needed for a verdict
    int window = 32;           // returns per information element
    std::uint64_t seed = 0;

    // Descriptive labels with no behavioral effect: "short", "medium"
    // or "long"; "conservative" or "aggressive". Empty means unset.
    std::string horizon_class = "";
    std::string objective = "";

    void validate() const;
};

// One accumulated piece of information: a snapshot window of returns
// with its fitted univariate summary.
struct InfoElement {
    std::uint64_t id;
    double arrival_t;
    Eigen::VectorXd features;
    GaussianSummary summary;
    bool taught;
};

struct GraphEdge {
    std::uint64_t a;
    std::uint64_t b;
    double distance;
    double strength;  // the overlap coefficient of the pair
};

struct ConnectionGraph {
    std::vector<std::uint64_t> nodes;
    std::vector<GraphEdge> edges;
};

enum class Verdict { Buy, Sell, Hold, DontKnow };

struct Answer {
    Verdict verdict = Verdict::DontKnow;
    double ci_lo = 0.0;  // interval on the next-tick return
    double ci_hi = 0.0;
    std::vector<std::size_t> basis;  // contributing edge indices
    bool learning_request = false;
};

// Information-accumulating decision agent. Collection is driven by the
// adoption curve, elements are linked inside the curiosity band, and a
// verdict is pooled from the linked summaries. Single-owner: one agent
// belongs to one simulation thread.
class TraderAgent {
public:
    explicit TraderAgent(AgentParams params);

    // Advances the arrival process to time t and snapshots one window
    // per arriving item from the observed return history. Collection
    // waits until at least two returns exist; the backlog then arrives
    // in a burst, so the store still saturates at the market potential.
    std::vector<InfoElement> tick(double t,
                                  const Eigen::Ref<const Eigen::VectorXd>& observed_returns);

    // Rebuilds the connection graph: every pair goes through the
    // alignment gate, the pair distance comes from the fitted
    // summaries, and an edge exists iff the distance falls inside
    // [band_lo, band_hi]. Infinite distances never link.
    ConnectionGraph link() const;

    // Pools a verdict from the evidence. Evidence is either enough
    // graph edges (>= min_connected) or a taught element comparable to
    // the queried window (distance <= band_hi); a lesson from the
    // teacher outweighs the edge count. With neither, the answer is
    // DontKnow with a learning request.
    Answer decide(const ConnectionGraph& graph,
                  const Eigen::Ref<const Eigen::VectorXd>& latest_window) const;

    // Injects a worked example as a full-strength element, bypassing
    // the arrival process. The realized-return overload appends the
    // outcome to the window so the lesson carries the answer.
    void teach(const Eigen::Ref<const Eigen::VectorXd>& window, double realized_return);
    void teach(const Eigen::Ref<const Eigen::VectorXd>& window, Verdict correct_verdict);

    const std::vector<InfoElement>& store() const { return store_; }
    const AgentParams& params() const { return params_; }

private:
    InfoElement build_element(double t, const Eigen::Ref<const Eigen::VectorXd>& features,
                              bool taught) const;
    void inject(const Eigen::Ref<const Eigen::VectorXd>& features);
    const Divergence& pair_divergence(std::size_t i, std::size_t j) const;

    AgentParams params_;
    ArrivalState arrivals_;
    std::vector<InfoElement> store_;
    std::uint64_t next_id_ = 1;
    // Elements are immutable once stored, so pair distances are cached.
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, Divergence> pair_cache_;
};

// One simulated decision step: the answer given at tick t and the
// return that then materialized.
struct AnswerLog {
    double t;
    Answer answer;
    double realized;
};

struct SimulationResult {
    TrackRecord record;
    std::vector<AnswerLog> log;
};

// Runs one agent over a price series: tick, link on store growth,
// decide, hold the decided position for one tick. Equity starts at 1
// and compounds position * log-return per tick. Deterministic in
// (params, series).
SimulationResult run_agent(const AgentParams& params, const PriceSeries& series);

struct SweepEntry {
    std::size_t agent_index;  // position in the input list
    AgentParams params;
    TrackRecord record;
    double score;
};

// Runs every parameter set over the series and ranks by composite
// score, ties broken by lower value at risk then input order.
std::vector<SweepEntry> sweep(const std::vector<AgentParams>& params_list,
                              const PriceSeries& series);

std::string to_string(Verdict v);

}  // namespace tradesim

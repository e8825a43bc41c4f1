// tradesim: batch simulator and report generator.
//
// Subcommands:
//   simulate --config cfg.json [--seed N] [--out DIR]
//   turing   record_a.csv record_b.csv [--threshold D] [--out DIR]
//   distance dataset_a.csv dataset_b.csv [--epsilon E] [--seed N]
//            [--mode gaussian|hist] [--bins N]
//
// Exit codes: 0 success (turing: indistinguishable), 1 turing:
// distinguishable, 2 configuration or parse error, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tradesim/agent.hpp"
#include "tradesim/divergence.hpp"
#include "tradesim/evaluation.hpp"
#include "tradesim/jl.hpp"
#include "tradesim/market.hpp"
#include "tradesim/numerics.hpp"
#include "tradesim/report_io.hpp"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double require_number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) {
        throw ConfigError("missing field '" + std::string(key) + "' in " + where);
    }
    if (!obj[key].is_number()) {
        throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number()) {
        throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

struct RunConfig {
    std::optional<tradesim::GbmParams> gbm;
    std::optional<std::filesystem::path> csv_path;
    std::uint64_t market_seed = 0;
    std::vector<tradesim::AgentParams> agents;
    tradesim::TuringThresholds thresholds;
    std::filesystem::path output_dir = ".";
};

std::string string_or(const json& obj, const std::string& where, const char* key,
                      const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_string()) {
        throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a string");
    }
    return obj[key].get<std::string>();
}

tradesim::AgentParams parse_agent(const json& obj, const std::string& where) {
    require_keys(obj, where,
                 {"p", "q", "m", "band_lo", "band_hi", "epsilon", "buy_z", "sell_z",
                  "confidence", "min_connected", "window", "seed", "horizon_class",
                  "objective"});
    tradesim::AgentParams params{tradesim::BassParams(require_number(obj, where, "p"),
                                                      require_number(obj, where, "q"),
                                                      require_number(obj, where, "m"))};
    params.band_lo = number_or(obj, where, "band_lo", params.band_lo);
    params.band_hi = number_or(obj, where, "band_hi", params.band_hi);
    params.epsilon = number_or(obj, where, "epsilon", params.epsilon);
    params.buy_z = number_or(obj, where, "buy_z", params.buy_z);
    params.sell_z = number_or(obj, where, "sell_z", params.sell_z);
    params.confidence = number_or(obj, where, "confidence", params.confidence);
    params.min_connected =
        static_cast<int>(number_or(obj, where, "min_connected", params.min_connected));
    params.window = static_cast<int>(number_or(obj, where, "window", params.window));
    params.seed = static_cast<std::uint64_t>(number_or(obj, where, "seed", 0.0));
    params.horizon_class = string_or(obj, where, "horizon_class", "");
    params.objective = string_or(obj, where, "objective", "");
    params.validate();
    return params;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config root must be an object");
    }
    require_keys(doc, "config", {"market", "agents", "evaluation", "seed", "output_dir"});

    RunConfig config;
    if (!doc.contains("market") || !doc["market"].is_object()) {
        throw ConfigError("missing object 'market' in config");
    }
    const json& market = doc["market"];
    require_keys(market, "market", {"gbm", "csv"});
    if (market.contains("gbm") == market.contains("csv")) {
        throw ConfigError("market must contain exactly one of 'gbm' or 'csv'");
    }
    if (market.contains("gbm")) {
        const json& gbm = market["gbm"];
        require_keys(gbm, "market.gbm", {"s0", "mu", "sigma", "horizon"});
        config.gbm = tradesim::GbmParams(
            require_number(gbm, "market.gbm", "s0"), require_number(gbm, "market.gbm", "mu"),
            require_number(gbm, "market.gbm", "sigma"),
            static_cast<Eigen::Index>(require_number(gbm, "market.gbm", "horizon")));
    } else {
        if (!market["csv"].is_string()) {
            throw ConfigError("field 'csv' in market must be a path string");
        }
        config.csv_path = market["csv"].get<std::string>();
    }

    if (!doc.contains("agents") || !doc["agents"].is_array() || doc["agents"].empty()) {
        throw ConfigError("config needs a non-empty 'agents' array");
    }
    for (std::size_t i = 0; i < doc["agents"].size(); ++i) {
        config.agents.push_back(
            parse_agent(doc["agents"][i], "agents[" + std::to_string(i) + "]"));
    }

    if (doc.contains("evaluation")) {
        const json& ev = doc["evaluation"];
        require_keys(ev, "evaluation", {"threshold", "sharpe_band", "mdd_band", "var_band"});
        config.thresholds.distance =
            number_or(ev, "evaluation", "threshold", config.thresholds.distance);
        config.thresholds.sharpe_band =
            number_or(ev, "evaluation", "sharpe_band", config.thresholds.sharpe_band);
        config.thresholds.mdd_band =
            number_or(ev, "evaluation", "mdd_band", config.thresholds.mdd_band);
        config.thresholds.var_band =
            number_or(ev, "evaluation", "var_band", config.thresholds.var_band);
    }
    if (doc.contains("seed")) {
        config.market_seed =
            static_cast<std::uint64_t>(number_or(doc, "config", "seed", 0.0));
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) {
            throw ConfigError("field 'output_dir' in config must be a string");
        }
        config.output_dir = doc["output_dir"].get<std::string>();
    }
    return config;
}

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 const std::string& out_override) {
    RunConfig config = parse_config(config_path);
    if (seed_override) {
        config.market_seed = *seed_override;
    }
    if (!out_override.empty()) {
        config.output_dir = out_override;
    }
    std::filesystem::create_directories(config.output_dir);

    const tradesim::PriceSeries series =
        config.gbm ? tradesim::generate_gbm(*config.gbm, config.market_seed)
                   : tradesim::ingest_csv(*config.csv_path);

    const std::vector<tradesim::SweepEntry> ranking = tradesim::sweep(config.agents, series);
    const tradesim::SweepEntry& best = ranking.front();
    const tradesim::SimulationResult best_run = tradesim::run_agent(best.params, series);

    // Reference for the two-record comparison: holding the asset itself.
    Eigen::VectorXd hold(static_cast<Eigen::Index>(series.ticks.size()));
    for (std::size_t i = 0; i < series.ticks.size(); ++i) {
        hold[static_cast<Eigen::Index>(i)] = series.ticks[i].price / series.ticks[0].price;
    }
    const tradesim::TrackRecord reference = tradesim::make_track_record(std::move(hold));
    const tradesim::TuringReport report =
        tradesim::turing_test(best_run.record, reference, config.thresholds);

    tradesim::write_track_record_csv(best_run.record, config.output_dir / "trackrecord.csv");
    tradesim::write_answers_jsonl(best_run.log, config.output_dir / "answers.jsonl");
    tradesim::write_turing_report_json(report, config.output_dir / "turing_report.json");
    tradesim::write_sweep_ranking_csv(ranking, config.output_dir / "sweep_ranking.csv");
    return 0;
}

int run_turing(const std::string& path_a, const std::string& path_b, double threshold,
               const std::string& out_dir) {
    const tradesim::TrackRecord a = tradesim::read_track_record_csv(path_a);
    const tradesim::TrackRecord b = tradesim::read_track_record_csv(path_b);
    tradesim::TuringThresholds thresholds;
    thresholds.distance = threshold;
    const tradesim::TuringReport report = tradesim::turing_test(a, b, thresholds);
    std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    tradesim::write_turing_report_json(report, dir / "turing_report.json");
    std::cout << "verdict " << tradesim::to_string(report.verdict) << '\n';
    return report.verdict == tradesim::TuringVerdict::Indistinguishable ? 0 : 1;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw tradesim::ParseError("cannot open dataset " + path.string(), 0);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        const char* cursor = line.data();
        const char* end = line.data() + line.size();
        while (true) {
            double value = 0.0;
            const auto res = std::from_chars(cursor, end, value);
            if (res.ec != std::errc{}) {
                throw tradesim::ParseError("bad number in dataset", line_no);
            }
            row.push_back(value);
            cursor = res.ptr;
            if (cursor == end) {
                break;
            }
            if (*cursor != ',') {
                throw tradesim::ParseError("expected comma in dataset", line_no);
            }
            ++cursor;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw tradesim::ParseError("ragged row in dataset", line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) {
        throw tradesim::ParseError("dataset needs at least 2 rows", line_no);
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.front().size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

tradesim::DiscreteDistribution histogram_of(const Eigen::MatrixXd& column, double lo, double hi,
                                            int bins) {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(bins);
    const double width = (hi - lo) / bins;
    for (Eigen::Index i = 0; i < column.rows(); ++i) {
        int bin = width > 0.0 ? static_cast<int>((column(i, 0) - lo) / width) : 0;
        bin = std::clamp(bin, 0, bins - 1);
        counts[bin] += 1.0;
    }
    return tradesim::DiscreteDistribution(counts / counts.sum());
}

int run_distance(const std::string& path_a, const std::string& path_b, double epsilon,
                 std::uint64_t seed, const std::string& mode, int bins) {
    const Eigen::MatrixXd a = read_matrix_csv(path_a);
    const Eigen::MatrixXd b = read_matrix_csv(path_b);

    tradesim::Divergence result{};
    Eigen::Index k = 0;
    int attempts = 0;
    if (mode == "hist") {
        if (a.cols() != 1 || b.cols() != 1) {
            throw tradesim::ParseError("histogram mode needs single-column datasets", 0);
        }
        const double lo = std::min(a.minCoeff(), b.minCoeff());
        const double hi = std::max(a.maxCoeff(), b.maxCoeff());
        result = tradesim::bc_discrete(histogram_of(a, lo, hi, bins),
                                       histogram_of(b, lo, hi, bins));
        k = bins;
    } else if (a.cols() == b.cols()) {
        // Same width: compare the fitted summaries directly.
        result = tradesim::bc_normal_mv(tradesim::fit_gaussian_summary(a),
                                        tradesim::fit_gaussian_summary(b));
        k = a.cols();
    } else {
        // Width mismatch: zero-pad every observation and push both
        // datasets through one shared verified map.
        const Eigen::Index d = std::max(a.cols(), b.cols());
        std::vector<Eigen::VectorXd> points;
        points.reserve(a.rows() + b.rows());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
            p.head(a.cols()) = a.row(i).transpose();
            points.push_back(std::move(p));
        }
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
            p.head(b.cols()) = b.row(i).transpose();
            points.push_back(std::move(p));
        }
        const tradesim::FindMapResult found = tradesim::find_map(points, epsilon, seed);
        k = found.map.output_dim();
        attempts = found.attempts;
        Eigen::MatrixXd pa(a.rows(), k);
        Eigen::MatrixXd pb(b.rows(), k);
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            pa.row(i) = tradesim::project(found.map, points[i]).transpose();
        }
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            pb.row(i) = tradesim::project(found.map, points[a.rows() + i]).transpose();
        }
        result = tradesim::bc_normal_mv(tradesim::fit_gaussian_summary(pa),
                                        tradesim::fit_gaussian_summary(pb));
    }
    std::cout << "rho " << tradesim::format_number(result.coefficient) << '\n'
              << "distance " << tradesim::format_number(result.distance) << '\n'
              << "k " << k << '\n'
              << "attempts " << attempts << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"information-diffusion trading simulator"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "run configured agents over a market");
    std::string config_path;
    simulate->add_option("--config", config_path, "JSON run configuration")->required();
    std::optional<std::uint64_t> seed_override;
    simulate->add_option("--seed", seed_override, "override the market seed");
    std::string out_override;
    simulate->add_option("--out", out_override, "override the output directory");

    auto* turing = app.add_subcommand("turing", "compare two track records");
    std::string record_a;
    std::string record_b;
    turing->add_option("record_a", record_a, "first track-record CSV")->required();
    turing->add_option("record_b", record_b, "second track-record CSV")->required();
    double threshold = tradesim::TuringThresholds{}.distance;
    turing->add_option("--threshold", threshold, "distance cutoff");
    std::string turing_out;
    turing->add_option("--out", turing_out, "report directory");

    auto* distance = app.add_subcommand("distance", "distance between two datasets");
    std::string dataset_a;
    std::string dataset_b;
    distance->add_option("dataset_a", dataset_a, "first dataset CSV")->required();
    distance->add_option("dataset_b", dataset_b, "second dataset CSV")->required();
    double epsilon = 0.5;
    distance->add_option("--epsilon", epsilon, "alignment distortion budget");
    std::uint64_t seed = 0;
    distance->add_option("--seed", seed, "alignment seed");
    std::string mode = "gaussian";
    distance->add_option("--mode", mode, "gaussian or hist")
        ->check(CLI::IsMember({"gaussian", "hist"}));
    int bins = 32;
    distance->add_option("--bins", bins, "histogram bins")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(config_path, seed_override, out_override);
        }
        if (turing->parsed()) {
            return run_turing(record_a, record_b, threshold, turing_out);
        }
        return run_distance(dataset_a, dataset_b, epsilon, seed, mode, bins);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const tradesim::ParseError& err) {
        std::cerr << "parse error: " << err.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "numeric error: " << err.what() << '\n';
        return 3;
    }
}

#include "tradesim/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tradesim {

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

}  // namespace

void write_track_record_csv(const TrackRecord& record, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "tick,equity,return\n";
    for (Eigen::Index i = 0; i < record.equity.size(); ++i) {
        const double r = i == 0 ? 0.0 : record.returns[i - 1];
        out << i << ',' << format_number(record.equity[i]) << ',' << format_number(r) << '\n';
    }
}

TrackRecord read_track_record_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("read_track_record_csv: cannot open " + path.string(), 0);
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("read_track_record_csv: empty file", 1);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "tick,equity,return") {
        throw ParseError("read_track_record_csv: expected header 'tick,equity,return'", line_no);
    }
    std::vector<double> equity;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw ParseError("read_track_record_csv: expected three fields", line_no);
        }
        double value = 0.0;
        const char* b = line.data() + c1 + 1;
        const char* e = line.data() + c2;
        const auto res = std::from_chars(b, e, value);
        if (res.ec != std::errc{} || res.ptr != e) {
            throw ParseError("read_track_record_csv: bad equity field", line_no);
        }
        double ret = 0.0;
        const char* rb = line.data() + c2 + 1;
        const char* re = line.data() + line.size();
        const auto rres = std::from_chars(rb, re, ret);
        if (rres.ec != std::errc{} || rres.ptr != re) {
            throw ParseError("read_track_record_csv: bad return field", line_no);
        }
        if (!(value > 0.0)) {
            throw ParseError("read_track_record_csv: equity must be > 0", line_no);
        }
        equity.push_back(value);
    }
    if (equity.empty()) {
        throw ParseError("read_track_record_csv: no data rows", line_no);
    }
    Eigen::VectorXd curve(static_cast<Eigen::Index>(equity.size()));
    for (std::size_t i = 0; i < equity.size(); ++i) {
        curve[static_cast<Eigen::Index>(i)] = equity[i];
    }
    return make_track_record(std::move(curve));
}

void write_answers_jsonl(const std::vector<AnswerLog>& log, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (const auto& entry : log) {
        out << "{\"verdict\":\"" << to_string(entry.answer.verdict) << "\",\"ci_lo\":"
            << format_number(entry.answer.ci_lo) << ",\"ci_hi\":"
            << format_number(entry.answer.ci_hi) << ",\"basis_count\":"
            << entry.answer.basis.size() << "}\n";
    }
}

namespace {

void write_metrics(std::ofstream& out, const MetricTriple& m) {
    out << "{\"sharpe\":" << format_number(m.sharpe) << ",\"max_drawdown\":"
        << format_number(m.max_drawdown) << ",\"var_95\":" << format_number(m.var_95) << '}';
}

}  // namespace

void write_turing_report_json(const TuringReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "{\n  \"metrics_a\": ";
    write_metrics(out, report.metrics_a);
    out << ",\n  \"metrics_b\": ";
    write_metrics(out, report.metrics_b);
    out << ",\n  \"rho\": " << format_number(report.pnl_distance.coefficient);
    out << ",\n  \"distance\": ";
    if (std::isfinite(report.pnl_distance.distance)) {
        out << format_number(report.pnl_distance.distance);
    } else {
        out << "\"inf\"";
    }
    out << ",\n  \"verdict\": \"" << to_string(report.verdict) << '"';
    out << ",\n  \"threshold\": " << format_number(report.thresholds.distance);
    out << "\n}\n";
}

void write_sweep_ranking_csv(const std::vector<SweepEntry>& entries,
                             const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "rank,agent_index,seed,score\n";
    for (std::size_t rank = 0; rank < entries.size(); ++rank) {
        const auto& e = entries[rank];
        out << rank + 1 << ',' << e.agent_index << ',' << e.params.seed << ','
            << format_number(e.score) << '\n';
    }
}

}  // namespace tradesim

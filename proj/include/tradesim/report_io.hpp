#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tradesim/agent.hpp"
#include "tradesim/evaluation.hpp"

namespace tradesim {

// Report writers. All numbers are emitted with shortest round-trip
// formatting and '\n' endings, so identical inputs produce
// byte-identical files.

// Header "tick,equity,return"; row i carries equity[i] and the return
// that produced it (0 for the first row).
void write_track_record_csv(const TrackRecord& record, const std::filesystem::path& path);

// Reads a track-record CSV back. The return column is re-derived from
// the equity column, which is the authoritative one.
TrackRecord read_track_record_csv(const std::filesystem::path& path);

// One object per decision tick: {"verdict":...,"ci_lo":...,"ci_hi":...,
// "basis_count":...}.
void write_answers_jsonl(const std::vector<AnswerLog>& log, const std::filesystem::path& path);

// {"metrics_a":{...},"metrics_b":{...},"rho":...,"distance":...,
//  "verdict":...,"threshold":...}; an infinite distance is written as
// the string "inf".
void write_turing_report_json(const TuringReport& report, const std::filesystem::path& path);

// Header "rank,agent_index,seed,score"; one row per sweep entry in rank
// order.
void write_sweep_ranking_csv(const std::vector<SweepEntry>& entries,
                             const std::filesystem::path& path);

// Shortest round-trip decimal rendering used by every writer; infinities
// render as "inf"/"-inf".
std::string format_number(double v);

}  // namespace tradesim

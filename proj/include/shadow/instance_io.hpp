#pragma once

#include <string>

#include "shadow/harness.hpp"

namespace shadow {

/// Instance files: {"A": [["p/q",...],...], "b": ["p/q",...], "meta": {...}}.
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

/// One JSON object per pivot: {"lambda": "p/q", "leave": i, "enter": j}.
std::string trace_to_jsonl(const PivotTrace& trace);

/// Per-trial CSV: header "trial,count,raw_count" plus one row per trial.
std::string crossing_report_csv(const CrossingReport& report);

Vec parse_vector(const std::string& csv);    // "p/q,p/q,..."
Basis parse_basis(const std::string& csv);   // "i,j,k"

}  // namespace shadow

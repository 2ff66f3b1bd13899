#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zf/graph.hpp"
#include "zf/nullity.hpp"

namespace zf {

enum class Check { T_iff, T_fmk, C_ft, P_left, L_order, E_bounds };

std::string to_string(Check c);
Check check_from_string(const std::string& name);  // UsageError on unknown names
const std::set<Check>& all_checks();

// One JSONL line per graph. Optional fields are null when the stage did not run.
struct CheckRecord {
    std::string graph;  // canonical graph6, or the raw graph6 when n > 10
    int n = 0;
    std::optional<int> f;
    std::optional<int> f_t;
    std::string tag;
    std::optional<int> m_certified;
    std::optional<bool> drawing_ok;
    std::optional<int> drawing_rows;
    std::map<std::string, std::string> lemma_checks;  // check name -> "pass" | "fail" | "skip"
    std::vector<std::string> violations;
    std::vector<std::string> advisories;
    std::optional<std::string> skipped;
    std::map<std::string, double> timings;  // milliseconds per stage

    bool failed() const { return !violations.empty(); }
    bool operator==(const CheckRecord&) const = default;
};

std::string record_to_json(const CheckRecord& r);
CheckRecord record_from_json(const std::string& line);  // IoError on malformed input

struct Corpus {
    std::string id;
    std::vector<Graph> graphs;
};

// Connected subcubic graphs with 1 <= n <= nmax, then the disjoint unions
// j*P2 (j = 1..4) and P_a + P_b (a <= b, a + b <= nmax) not already present.
Corpus builtin_corpus(int nmax);
// graph6 file; IoError if unreadable, ParseError on a bad record.
Corpus load_corpus(const std::string& path);

struct SuiteOptions {
    std::set<Check> checks = all_checks();
    std::string results_path;  // JSONL file; empty keeps everything in memory
    bool resume = false;       // keep records already in results_path and skip their graphs
    NullityOptions nullity{};
    // Budget multiplier for the advisory "never certifies m + 1" probe; 0 skips it.
    int advisory_factor = 0;
    int workers = 1;
    // Stop after writing this many new records (an interruption for tests).
    std::optional<std::size_t> max_records;
};

struct SuiteReport {
    std::string corpus_id;
    std::map<std::string, int> totals;  // per classification tag, plus "Skipped"
    std::vector<CheckRecord> records;   // corpus order
    std::vector<CheckRecord> violations;
    std::size_t cursor = 0;             // corpus entries handled
    bool complete = false;

    bool ok() const { return violations.empty(); }
};

// Runs the selected checks on one graph.
CheckRecord check_graph(const Graph& g, const SuiteOptions& opt);

SuiteReport run_suite(const Corpus& corpus, const SuiteOptions& opt);

// Rebuilds a report from a results file (the corpus id is not stored there).
SuiteReport load_report(const std::string& corpus_id, const std::string& results_path);

// Per-graph, per-field differences ignoring timings; empty for identical runs.
// UsageError when the corpus ids differ.
std::string diff_reports(const SuiteReport& a, const SuiteReport& b);

// Compact JSON summary: corpus, totals, violation keys, complete.
std::string report_summary_json(const SuiteReport& r);

}  // namespace zf

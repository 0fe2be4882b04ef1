#pragma once
// Benchmark harness: each suite query runs `repetitions` times per mode and
// reports averaged wall time plus the operation counters that make runs
// comparable across machines (BFS node/edge counts, join-baseline
// intermediate rows, hash-join-free result sizes).
//
// Modes: cost (cost-ordered, BFS paths), noce (paths forced last, BFS), and
// joinonly (paths via iterated self-join expansion). Result rows must agree
// across modes; a disagreement or an exception marks the row failed.

#include <chrono>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pathtriple/executor.hpp"
#include "pathtriple/planner.hpp"
#include "pathtriple/sparql.hpp"

namespace pathtriple {

struct BenchQuery {
    std::string id;
    std::string text;
};

// Suite file: one query per line as `<name>\t<query text>`; '#' comments.
inline std::vector<BenchQuery> parse_suite(std::istream& in) {
    std::vector<BenchQuery> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ConfigError("suite line needs '<name>\\t<query>': " + line);
        out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return out;
}

struct BenchRow {
    std::string query_id;
    std::string mode;
    double wall_ms = 0.0;       // average over repetitions
    uint64_t nodes_visited = 0;
    uint64_t edges_expanded = 0;
    uint64_t intermediate_rows = 0;
    uint64_t result_rows = 0;
    bool failed = false;
    std::string error;
};

// Offline-side figures for the store the suite ran against.
struct BenchLoadInfo {
    std::string dataset_id;
    double load_time_ms = 0.0;            // 0 when the store pre-existed
    uint64_t disk_bytes = 0;
    uint64_t memory_resident_triples = 0; // |T_G|: edges held in memory
};

struct BenchReport {
    std::vector<BenchRow> rows;
    BenchLoadInfo load;
    int repetitions = 0;
};

struct BenchModeSpec {
    std::string name;
    PlanMode plan_mode;
    PathExecMode exec_mode;
};

inline const std::vector<BenchModeSpec>& bench_modes() {
    static const std::vector<BenchModeSpec> modes = {
        {"cost", PlanMode::CostBased, PathExecMode::Bfs},
        {"noce", PlanMode::NoCE, PathExecMode::Bfs},
        {"joinonly", PlanMode::NoCE, PathExecMode::JoinExpand},
    };
    return modes;
}

inline BenchReport run_bench(const TripleStore& store, const TopologyGraph& graph,
                             const std::vector<BenchQuery>& queries,
                             const CostModelParams& params,
                             const std::map<std::string, std::string>& prefixes,
                             int repetitions = 10) {
    BenchReport report;
    report.repetitions = repetitions;

    for (const auto& q : queries) {
        std::map<std::string, uint64_t> rows_by_mode;
        for (const auto& mode : bench_modes()) {
            BenchRow row;
            row.query_id = q.id;
            row.mode = mode.name;
            try {
                Query parsed = parse_query(q.text, prefixes);
                Plan plan = lower_to_algebra(parsed, store.dict());
                Plan ordered = order_joins(std::move(plan), store.catalog(), store, params,
                                           mode.plan_mode);

                double total_ms = 0.0;
                for (int rep = 0; rep < repetitions; ++rep) {
                    ExecStats stats;
                    Executor exec(store, graph, store.dict(), mode.exec_mode, &stats);
                    auto t0 = std::chrono::steady_clock::now();
                    BindingTable result = exec.run(ordered);
                    total_ms += std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                    if (rep == 0) {
                        row.result_rows = result.rows.size();
                        row.nodes_visited = stats.nodes_visited;
                        row.edges_expanded = stats.edges_expanded;
                        row.intermediate_rows = stats.intermediate_rows;
                    }
                }
                row.wall_ms = total_ms / repetitions;
                rows_by_mode[mode.name] = row.result_rows;
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            report.rows.push_back(std::move(row));
        }
        // Modes disagreeing on the result set is a correctness failure.
        uint64_t expected = rows_by_mode.empty() ? 0 : rows_by_mode.begin()->second;
        for (const auto& [_, n] : rows_by_mode) {
            if (n != expected) {
                for (auto& r : report.rows) {
                    if (r.query_id == q.id && !r.failed) {
                        r.failed = true;
                        r.error = "result rows differ across modes";
                    }
                }
                break;
            }
        }
    }
    return report;
}

inline std::string bench_tsv(const BenchReport& report) {
    std::ostringstream os;
    os << "query\tmode\twall_ms\tnodes_visited\tedges_expanded\tintermediate_rows\tresult_rows\tstatus\n";
    for (const auto& r : report.rows) {
        os << r.query_id << "\t" << r.mode << "\t" << r.wall_ms << "\t" << r.nodes_visited
           << "\t" << r.edges_expanded << "\t" << r.intermediate_rows << "\t" << r.result_rows
           << "\t" << (r.failed ? "failed: " + r.error : std::string("ok")) << "\n";
    }
    return os.str();
}

}  // namespace pathtriple

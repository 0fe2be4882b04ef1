#pragma once
// Bottom-up plan execution producing binding tables.
//
//   OpTriple   disk-store index scan
//   OpPath     in-memory BFS (or the join-expansion baseline in JoinExpand
//              mode), with endpoint sets narrowed by bindings already
//              produced on the left side of the enclosing join
//   OpJoin     hash join on the shared variables
//   OpUnion    concatenation over the branches' common columns
//   OpDistinct / OpProject  dedup / column selection
//
// Narrowed path endpoints are intersected with the graph's node set, so a
// hinted evaluation returns exactly the unhinted result restricted to the
// hint: plans ordered differently produce identical result sets.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathtriple/algebra.hpp"
#include "pathtriple/disk_store.hpp"
#include "pathtriple/join_baseline.hpp"
#include "pathtriple/path_eval.hpp"
#include "pathtriple/topo_graph.hpp"

namespace pathtriple {

struct BindingTable {
    std::vector<std::string> columns;
    std::vector<std::vector<TermId>> rows;

    int column_index(const std::string& name) const {
        for (size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }

    void dedup() {
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    }
};

enum class PathExecMode : uint8_t { Bfs = 0, JoinExpand = 1 };

struct ExecStats {
    uint64_t nodes_visited = 0;      // BFS node visits
    uint64_t edges_expanded = 0;     // BFS adjacency scans
    uint64_t intermediate_rows = 0;  // join-baseline materialized rows
};

class Executor {
public:
    Executor(const TripleStore& store, const TopologyGraph& graph, const Dictionary& dict,
             PathExecMode mode = PathExecMode::Bfs, ExecStats* stats = nullptr)
        : store_(store), graph_(graph), dict_(dict), mode_(mode), stats_(stats) {}

    BindingTable run(const Plan& plan) {
        if (!graph_.sealed()) throw StateError("topology graph not sealed");
        return eval(plan, {});
    }

private:
    using Hints = std::map<std::string, std::vector<TermId>>;

    BindingTable eval(const Plan& plan, const Hints& hints) {
        if (const auto* t = std::get_if<OpTriple>(&plan.node)) return eval_triple(*t);
        if (const auto* p = std::get_if<OpPath>(&plan.node)) return eval_path_op(*p, hints);
        if (plan.is<OpJoin>()) return eval_join(plan.children[0], plan.children[1]);
        if (plan.is<OpUnion>()) return eval_union(plan.children);
        if (plan.is<OpDistinct>()) {
            BindingTable t = eval(plan.children[0], hints);
            t.dedup();
            return t;
        }
        // OpProject
        return eval_project(plan.as<OpProject>(), eval(plan.children[0], hints));
    }

    BindingTable eval_triple(const OpTriple& op) {
        BindingTable out;
        std::vector<std::pair<std::string, int>> var_positions;  // name -> slot 0/1/2
        auto add_var = [&](const PatternSlot& slot, int pos) {
            if (!slot.is_var()) return;
            for (const auto& [name, _] : var_positions)
                if (name == slot.var) return;  // repeated var: keep first position
            var_positions.emplace_back(slot.var, pos);
        };
        add_var(op.pattern.s, 0);
        add_var(op.pattern.p, 1);
        add_var(op.pattern.o, 2);
        for (const auto& [name, _] : var_positions) out.columns.push_back(name);
        if (op.provably_empty) return out;

        for (const Triple& t : store_.match(op.pattern)) {
            std::vector<TermId> row;
            row.reserve(var_positions.size());
            for (const auto& [_, pos] : var_positions)
                row.push_back(pos == 0 ? t.s : pos == 1 ? t.p : t.o);
            out.rows.push_back(std::move(row));
        }
        return out;
    }

    NodeSpec endpoint_spec(const PatternSlot& slot, const Hints& hints) const {
        if (slot.is_bound()) return NodeSpec::bound_single(*slot.term);
        auto it = hints.find(slot.var);
        if (it == hints.end()) return NodeSpec::unbound();
        // Intersect with the node set: a hint must behave as a pure filter on
        // the unhinted result, including zero-length matches.
        std::vector<TermId> narrowed;
        for (TermId id : it->second)
            if (graph_.contains_node(id)) narrowed.push_back(id);
        return NodeSpec::bound(std::move(narrowed));
    }

    BindingTable eval_path_op(const OpPath& op, const Hints& hints) {
        BindingTable out;
        const bool same_var = op.subject.is_var() && op.object.is_var() &&
                              op.subject.var == op.object.var;
        if (op.subject.is_var()) out.columns.push_back(op.subject.var);
        if (op.object.is_var() && !same_var) out.columns.push_back(op.object.var);
        if (op.provably_empty) return out;

        NodeSpec sources = endpoint_spec(op.subject, hints);
        NodeSpec targets = endpoint_spec(op.object, hints);

        ReachResult reach;
        if (mode_ == PathExecMode::Bfs) {
            TraversalStats stats;
            reach = eval_path(graph_, sources, targets, op.path, dict_, &stats);
            if (stats_) {
                stats_->nodes_visited += stats.nodes_visited;
                stats_->edges_expanded += stats.edges_expanded;
            }
        } else {
            uint64_t rows = 0;
            reach = expand_path(store_, graph_, dict_, sources, targets, op.path, rows);
            if (stats_) stats_->intermediate_rows += rows;
        }

        for (const auto& [u, v] : reach.pairs) {
            if (same_var) {
                if (u == v) out.rows.push_back({u});
                continue;
            }
            std::vector<TermId> row;
            if (op.subject.is_var()) row.push_back(u);
            if (op.object.is_var()) row.push_back(v);
            out.rows.push_back(std::move(row));
        }
        if (out.columns.empty() && !reach.pairs.empty()) out.rows.push_back({});  // existence
        if (same_var || !op.subject.is_var() || !op.object.is_var()) out.dedup();
        return out;
    }

    BindingTable eval_join(const Plan& left, const Plan& right) {
        BindingTable l = eval(left, {});

        // Sideways information passing: a path leaf on the right sees the
        // bindings its endpoint variables already have on the left.
        Hints hints;
        if (const auto* p = std::get_if<OpPath>(&right.node)) {
            for (const auto* slot : {&p->subject, &p->object}) {
                if (!slot->is_var()) continue;
                int col = l.column_index(slot->var);
                if (col < 0) continue;
                std::vector<TermId> values;
                values.reserve(l.rows.size());
                for (const auto& row : l.rows) values.push_back(row[static_cast<size_t>(col)]);
                std::sort(values.begin(), values.end());
                values.erase(std::unique(values.begin(), values.end()), values.end());
                hints[slot->var] = std::move(values);
            }
        }
        BindingTable r = eval(right, hints);
        return hash_join(l, r);
    }

    BindingTable hash_join(const BindingTable& left, const BindingTable& right) {
        std::vector<std::pair<int, int>> shared;  // (left col, right col)
        for (size_t i = 0; i < left.columns.size(); ++i) {
            int rc = right.column_index(left.columns[i]);
            if (rc >= 0) shared.emplace_back(static_cast<int>(i), rc);
        }

        BindingTable out;
        out.columns = left.columns;
        std::vector<int> right_extra;
        for (size_t i = 0; i < right.columns.size(); ++i) {
            if (left.column_index(right.columns[i]) < 0) {
                out.columns.push_back(right.columns[i]);
                right_extra.push_back(static_cast<int>(i));
            }
        }

        auto key_of = [](const std::vector<TermId>& row, const std::vector<std::pair<int, int>>& cols,
                         bool left_side) {
            std::vector<uint64_t> key;
            key.reserve(cols.size());
            for (const auto& [lc, rc] : cols)
                key.push_back(row[static_cast<size_t>(left_side ? lc : rc)].value);
            return key;
        };
        struct KeyHash {
            size_t operator()(const std::vector<uint64_t>& key) const {
                size_t h = 1469598103934665603ull;
                for (uint64_t v : key) h = (h ^ v) * 1099511628211ull;
                return h;
            }
        };

        std::unordered_map<std::vector<uint64_t>, std::vector<size_t>, KeyHash> build;
        for (size_t i = 0; i < left.rows.size(); ++i)
            build[key_of(left.rows[i], shared, true)].push_back(i);

        for (const auto& rrow : right.rows) {
            auto it = build.find(key_of(rrow, shared, false));
            if (it == build.end()) continue;
            for (size_t li : it->second) {
                std::vector<TermId> row = left.rows[li];
                for (int rc : right_extra) row.push_back(rrow[static_cast<size_t>(rc)]);
                out.rows.push_back(std::move(row));
            }
        }
        return out;
    }

    BindingTable eval_union(const std::vector<Plan>& branches) {
        std::vector<BindingTable> tables;
        tables.reserve(branches.size());
        for (const auto& b : branches) tables.push_back(eval(b, {}));

        // Branches export their common variables; branch-local ones (fresh
        // intermediate hops) stay inside.
        std::vector<std::string> common;
        for (const auto& col : tables.front().columns) {
            bool everywhere = true;
            for (size_t i = 1; i < tables.size(); ++i)
                if (tables[i].column_index(col) < 0) everywhere = false;
            if (everywhere) common.push_back(col);
        }

        BindingTable out;
        out.columns = common;
        for (const auto& t : tables) {
            std::vector<int> cols;
            cols.reserve(common.size());
            for (const auto& name : common) cols.push_back(t.column_index(name));
            for (const auto& row : t.rows) {
                std::vector<TermId> projected;
                projected.reserve(cols.size());
                for (int c : cols) projected.push_back(row[static_cast<size_t>(c)]);
                out.rows.push_back(std::move(projected));
            }
        }
        out.dedup();
        return out;
    }

    BindingTable eval_project(const OpProject& op, BindingTable in) {
        BindingTable out;
        std::vector<int> cols;
        for (const auto& v : op.vars) {
            int c = in.column_index(v);
            if (c >= 0) {  // unbound projection vars were warned about at parse
                out.columns.push_back(v);
                cols.push_back(c);
            }
        }
        for (const auto& row : in.rows) {
            std::vector<TermId> projected;
            projected.reserve(cols.size());
            for (int c : cols) projected.push_back(row[static_cast<size_t>(c)]);
            out.rows.push_back(std::move(projected));
        }
        return out;
    }

    const TripleStore& store_;
    const TopologyGraph& graph_;
    const Dictionary& dict_;
    PathExecMode mode_;
    ExecStats* stats_;
};

}  // namespace pathtriple

#pragma once
// Dataset loading: parse N-Triples, intern terms, classify each triple, write
// everything to the disk store and mirror topology triples into the in-memory
// graph. Counts are over distinct triples; duplicate statements in the input
// collapse under set semantics and are reported separately.

#include <chrono>
#include <istream>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/disk_store.hpp"
#include "pathtriple/ntriples.hpp"
#include "pathtriple/partition.hpp"
#include "pathtriple/topo_graph.hpp"

namespace pathtriple {

struct LoadReport {
    uint64_t triples_total = 0;     // distinct triples stored
    uint64_t triples_topology = 0;
    uint64_t triples_attribute = 0;
    uint64_t parse_errors = 0;      // lenient mode: skipped lines
    uint64_t duplicates = 0;
    double elapsed_ms = 0.0;
};

inline LoadReport load_dataset(std::istream& in, const PartitionConfig& config,
                               StoreWriter& writer, TopologyGraph& graph, Dictionary& dict,
                               bool strict = false) {
    config.check();
    auto started = std::chrono::steady_clock::now();

    LoadReport report;
    NTriplesReader reader(in, strict);
    RawStatement statement;
    while (reader.next(statement)) {
        Triple triple{dict.intern(statement.subject), dict.intern(statement.predicate),
                      dict.intern(statement.object)};
        TripleClass cls = classify(triple, config, dict);
        if (!writer.insert(triple, cls)) {
            ++report.duplicates;
            continue;
        }
        if (cls == TripleClass::Topology) {
            graph.add_edge(triple.s, triple.p, triple.o);
            ++report.triples_topology;
        } else {
            ++report.triples_attribute;
        }
        ++report.triples_total;
    }
    report.parse_errors = reader.skipped();

    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return report;
}

// Rebuilds the in-memory topology graph from a sealed store's triples.
// Returns the number of edges inserted; callers check it against the catalog.
inline uint64_t rebuild_topology(const TripleStore& store, const PartitionConfig& config,
                                 TopologyGraph& graph) {
    uint64_t edges = 0;
    store.each_triple([&](const Triple& t) {
        if (classify(t, config, store.dict()) == TripleClass::Topology) {
            if (graph.add_edge(t.s, t.p, t.o)) ++edges;
        }
    });
    graph.seal();
    return edges;
}

}  // namespace pathtriple

#pragma once
// Store statistics: triple counts, the entity-graph sizes |V_EE| / |E_EE|,
// per-predicate counts, and the per-store densification constant used by the
// path cost model.

#include <cstdint>
#include <map>

#include "pathtriple/term.hpp"

namespace pathtriple {

struct StoreCatalog {
    uint64_t triples_total = 0;
    uint64_t topology = 0;        // |T_G|
    uint64_t attribute = 0;       // |T_A|
    uint64_t entity_nodes = 0;    // |V_EE|: distinct ids in subject/object of topology triples
    uint64_t topology_edges = 0;  // |E_EE|; equals `topology`
    std::map<TermId, uint64_t> per_predicate;
    double densification_c = 1.75;

    double topology_ratio() const {
        return triples_total == 0 ? 0.0
                                  : static_cast<double>(topology) / static_cast<double>(triples_total);
    }

    bool consistent() const {
        if (triples_total != topology + attribute) return false;
        if (topology_edges != topology) return false;
        uint64_t sum = 0;
        for (const auto& [p, n] : per_predicate) sum += n;
        return sum == triples_total;
    }

    bool operator==(const StoreCatalog&) const = default;
};

}  // namespace pathtriple

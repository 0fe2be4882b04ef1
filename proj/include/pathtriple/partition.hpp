#pragma once
// Topology/attribute partitioning of incoming triples.
//
// Rule 1 (unconditional): a literal object makes the triple an attribute.
// Rule 2: predicate semantics, supplied as explicit IRI lists. IRI-object
// triples whose predicate is in neither list take the configured default.

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "pathtriple/dictionary.hpp"
#include "pathtriple/errors.hpp"
#include "pathtriple/triple.hpp"

namespace pathtriple {

struct PartitionConfig {
    std::unordered_set<std::string> topology_predicates;
    std::unordered_set<std::string> attribute_predicates;
    TripleClass default_for_iri_objects = TripleClass::Topology;

    // Seed list: foaf:knows plus the example-vocabulary relation predicates.
    static PartitionConfig defaults() {
        PartitionConfig cfg;
        cfg.topology_predicates = {
            "http://xmlns.com/foaf/0.1/knows",
            "http://example.org/knows",
            "http://example.org/creatorOf",
            "http://example.org/likedBy",
            "http://example.org/worksFor",
            "http://example.org/follows",
        };
        return cfg;
    }

    void check() const {
        for (const auto& iri : topology_predicates)
            if (attribute_predicates.count(iri))
                throw ConfigError("predicate listed as both topology and attribute: " + iri);
    }

    // Emits the same line-oriented format parse() reads. Sorted for
    // deterministic output.
    void serialize(std::ostream& out) const {
        std::vector<std::string> sorted(topology_predicates.begin(), topology_predicates.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& iri : sorted) out << "topology " << iri << "\n";
        sorted.assign(attribute_predicates.begin(), attribute_predicates.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& iri : sorted) out << "attribute " << iri << "\n";
        out << "default "
            << (default_for_iri_objects == TripleClass::Topology ? "topology" : "attribute")
            << "\n";
    }

    // Line-oriented config: `topology <iri>`, `attribute <iri>`,
    // `default topology|attribute`; '#' starts a comment.
    static PartitionConfig parse(std::istream& in) {
        PartitionConfig cfg;
        std::string line;
        uint64_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            // '#' opens a comment only at line start or after whitespace;
            // IRIs routinely contain fragment '#'.
            for (size_t i = 0; i < line.size(); ++i) {
                if (line[i] != '#') continue;
                if (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t') {
                    line.erase(i);
                    break;
                }
            }
            std::istringstream ls(line);
            std::string keyword, value;
            if (!(ls >> keyword)) continue;
            if (!(ls >> value))
                throw ConfigError("config line " + std::to_string(line_no) + ": missing value");
            if (keyword == "topology") {
                cfg.topology_predicates.insert(value);
            } else if (keyword == "attribute") {
                cfg.attribute_predicates.insert(value);
            } else if (keyword == "default") {
                if (value == "topology") cfg.default_for_iri_objects = TripleClass::Topology;
                else if (value == "attribute") cfg.default_for_iri_objects = TripleClass::Attribute;
                else throw ConfigError("config line " + std::to_string(line_no) +
                                       ": default must be 'topology' or 'attribute'");
            } else {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unknown directive '" + keyword + "'");
            }
        }
        cfg.check();
        return cfg;
    }
};

// Total and deterministic; literal objects never classify as topology.
inline TripleClass classify(const Triple& triple, const PartitionConfig& config,
                            const Dictionary& dict) {
    const Term& object = dict.resolve(triple.o);
    if (object.is_literal()) return TripleClass::Attribute;
    const Term& predicate = dict.resolve(triple.p);
    if (config.topology_predicates.count(predicate.lexical)) return TripleClass::Topology;
    if (config.attribute_predicates.count(predicate.lexical)) return TripleClass::Attribute;
    return config.default_for_iri_objects;
}

}  // namespace pathtriple

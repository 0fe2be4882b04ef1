#include <doctest.h>

#include <sstream>

#include "pathtriple/partition.hpp"

using namespace pathtriple;

namespace {

struct Fixture {
    Dictionary dict;
    PartitionConfig config = PartitionConfig::defaults();

    Triple triple(const Term& s, const Term& p, const Term& o) {
        return {dict.intern(s), dict.intern(p), dict.intern(o)};
    }
};

}  // namespace

TEST_CASE("literal objects always classify as attribute") {
    Fixture f;
    // Even a predicate on the topology list cannot rescue a literal object.
    auto t = f.triple(Term::iri("http://example.org/P1"), Term::iri("http://example.org/knows"),
                      Term::literal("Sam"));
    CHECK(classify(t, f.config, f.dict) == TripleClass::Attribute);

    auto name = f.triple(Term::iri("http://example.org/P1"),
                         Term::iri("http://example.org/hasName"), Term::literal("Sam"));
    CHECK(classify(name, f.config, f.dict) == TripleClass::Attribute);
}

TEST_CASE("topology predicates classify IRI-object triples as topology") {
    Fixture f;
    auto t = f.triple(Term::iri("http://example.org/P1"), Term::iri("http://example.org/knows"),
                      Term::iri("http://example.org/P2"));
    CHECK(classify(t, f.config, f.dict) == TripleClass::Topology);
}

TEST_CASE("attribute-list predicates win over IRI objects") {
    Fixture f;
    f.config.attribute_predicates.insert("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    auto t = f.triple(Term::iri("http://example.org/D1"),
                      Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
                      Term::iri("http://example.org/Document"));
    CHECK(classify(t, f.config, f.dict) == TripleClass::Attribute);
}

TEST_CASE("unlisted IRI-object predicates take the default") {
    Fixture f;
    auto t = f.triple(Term::iri("http://example.org/a"), Term::iri("http://example.org/unlisted"),
                      Term::iri("http://example.org/b"));
    CHECK(classify(t, f.config, f.dict) == TripleClass::Topology);
    f.config.default_for_iri_objects = TripleClass::Attribute;
    CHECK(classify(t, f.config, f.dict) == TripleClass::Attribute);
}

TEST_CASE("blank node objects are entities, not literals") {
    Fixture f;
    auto t = f.triple(Term::iri("http://example.org/a"), Term::iri("http://example.org/unlisted"),
                      Term::blank("b0"));
    CHECK(classify(t, f.config, f.dict) == TripleClass::Topology);
}

TEST_CASE("classify is exhaustive over term-kind and list combinations") {
    Fixture f;
    f.config.attribute_predicates.insert("http://example.org/attrListed");
    std::vector<Term> objects = {Term::iri("http://example.org/o"), Term::blank("b"),
                                 Term::literal("v"), Term::typed_literal("v", "http://t"),
                                 Term::lang_literal("v", "en")};
    std::vector<Term> predicates = {Term::iri("http://example.org/knows"),
                                    Term::iri("http://example.org/attrListed"),
                                    Term::iri("http://example.org/unlisted")};
    for (const auto& p : predicates) {
        for (const auto& o : objects) {
            auto t = f.triple(Term::iri("http://example.org/s"), p, o);
            TripleClass c = classify(t, f.config, f.dict);
            if (o.is_literal()) {
                CHECK(c == TripleClass::Attribute);  // rule 1 supremacy
            } else if (p.lexical == "http://example.org/knows") {
                CHECK(c == TripleClass::Topology);
            } else if (p.lexical == "http://example.org/attrListed") {
                CHECK(c == TripleClass::Attribute);
            } else {
                CHECK(c == f.config.default_for_iri_objects);
            }
        }
    }
}

TEST_CASE("config file parsing") {
    std::istringstream in(
        "# comment line\n"
        "topology http://example.org/knows\n"
        "attribute http://www.w3.org/1999/02/22-rdf-syntax-ns#type  # inline comment\n"
        "default attribute\n");
    PartitionConfig cfg = PartitionConfig::parse(in);
    CHECK(cfg.topology_predicates.count("http://example.org/knows") == 1);
    CHECK(cfg.attribute_predicates.count("http://www.w3.org/1999/02/22-rdf-syntax-ns#type") == 1);
    CHECK(cfg.default_for_iri_objects == TripleClass::Attribute);
}

TEST_CASE("config errors") {
    std::istringstream bad_directive("frobnicate http://x\n");
    CHECK_THROWS_AS(PartitionConfig::parse(bad_directive), ConfigError);
    std::istringstream bad_default("default sideways\n");
    CHECK_THROWS_AS(PartitionConfig::parse(bad_default), ConfigError);
    std::istringstream overlapping("topology http://x\nattribute http://x\n");
    CHECK_THROWS_AS(PartitionConfig::parse(overlapping), ConfigError);
}

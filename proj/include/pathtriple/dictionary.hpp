#pragma once
// Bijective Term <-> TermId mapping. Ids are dense and start at 1.
//
// Lifecycle: one writer interns terms during load; seal() freezes the
// dictionary, after which it is immutable and safe to share across threads.

#include <atomic>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pathtriple/term.hpp"

namespace pathtriple {

class Dictionary {
public:
    Dictionary() : generation_(next_generation()) {}

    // Returns the existing id for an already-interned term, else assigns the
    // next id. Throws ParseError on malformed terms, StateError after seal.
    TermId intern(const Term& term) {
        term.check();
        auto it = term_to_id_.find(term);
        if (it != term_to_id_.end()) return it->second;
        if (sealed_) throw StateError("dictionary is sealed");
        TermId id{static_cast<uint64_t>(id_to_term_.size()) + 1};
        id_to_term_.push_back(term);
        term_to_id_.emplace(term, id);
        return id;
    }

    // Throws StoreError for id 0 and for ids this dictionary never issued.
    const Term& resolve(TermId id) const {
        if (!id.valid() || id.value > id_to_term_.size())
            throw StoreError("unknown term id " + std::to_string(id.value) +
                             " (dictionary generation " + std::to_string(generation_) + ")");
        return id_to_term_[id.value - 1];
    }

    std::optional<TermId> lookup(const Term& term) const {
        auto it = term_to_id_.find(term);
        if (it == term_to_id_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<TermId> lookup_iri(const std::string& iri) const {
        return lookup(Term::iri(iri));
    }

    size_t size() const { return id_to_term_.size(); }
    bool sealed() const { return sealed_; }
    void seal() { sealed_ = true; }

    // Distinguishes dictionary instances within a process; ids do not carry
    // the generation, so out-of-range detection is the only hard guarantee.
    uint64_t generation() const { return generation_; }

    // Terms in id order (id = index + 1). Used by the store snapshot writer.
    const std::vector<Term>& terms() const { return id_to_term_; }

private:
    static uint64_t next_generation() {
        static std::atomic<uint64_t> counter{1};
        return counter.fetch_add(1);
    }

    std::unordered_map<Term, TermId, TermHash> term_to_id_;
    std::vector<Term> id_to_term_;
    uint64_t generation_;
    bool sealed_ = false;
};

}  // namespace pathtriple

#pragma once
// Persistent triple store with three permutation indices (SPO, POS, OSP).
// Every single- and double-bound triple pattern is a prefix scan on one of
// the three; a hexastore's other three orderings buy nothing here.
//
// Store directory layout:
//   catalog.bin     counts, per-predicate histogram, densification constant
//   dict.bin        term snapshot, length-prefixed, ids implicit by order
//   spo.idx         24-byte records (3 x u64 little-endian), sorted, key (s,p,o)
//   pos.idx         records permuted to (p,o,s), sorted by that key
//   osp.idx         records permuted to (o,s,p), sorted by that key
//   partial.marker  present while a load is in flight; a store carrying the
//                   marker refuses to open for reading
//
// Bulk load buffers permuted records and spills sorted runs past a threshold;
// seal() k-way-merges the runs into the final index files.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "pathtriple/catalog.hpp"
#include "pathtriple/dictionary.hpp"
#include "pathtriple/errors.hpp"
#include "pathtriple/triple.hpp"

namespace pathtriple {

enum class IndexOrder : uint8_t { SPO = 0, POS = 1, OSP = 2 };

namespace detail {

using Record = std::array<uint64_t, 3>;

inline Record permute(const Triple& t, IndexOrder order) {
    switch (order) {
        case IndexOrder::SPO: return {t.s.value, t.p.value, t.o.value};
        case IndexOrder::POS: return {t.p.value, t.o.value, t.s.value};
        case IndexOrder::OSP: return {t.o.value, t.s.value, t.p.value};
    }
    return {};
}

inline Triple unpermute(const Record& r, IndexOrder order) {
    switch (order) {
        case IndexOrder::SPO: return {TermId{r[0]}, TermId{r[1]}, TermId{r[2]}};
        case IndexOrder::POS: return {TermId{r[2]}, TermId{r[0]}, TermId{r[1]}};
        case IndexOrder::OSP: return {TermId{r[1]}, TermId{r[2]}, TermId{r[0]}};
    }
    return {};
}

inline const char* index_file_name(IndexOrder order) {
    switch (order) {
        case IndexOrder::SPO: return "spo.idx";
        case IndexOrder::POS: return "pos.idx";
        case IndexOrder::OSP: return "osp.idx";
    }
    return "";
}

constexpr uint32_t kIndexMagic = 0x58495450;    // "PTIX"
constexpr uint32_t kDictMagic = 0x43445450;     // "PTDC"
constexpr uint32_t kCatalogMagic = 0x54435450;  // "PTCT"
constexpr uint16_t kFormatVersion = 1;

inline void write_u8(std::ostream& out, uint8_t v) { out.put(static_cast<char>(v)); }
inline void write_u16(std::ostream& out, uint16_t v) {
    for (int i = 0; i < 2; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void write_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void write_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void write_f64(std::ostream& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    write_u64(out, bits);
}
inline void write_bytes(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

struct ByteReader {
    std::istream& in;
    const std::string file;

    uint8_t u8() { return static_cast<uint8_t>(get()); }
    uint16_t u16() { return static_cast<uint16_t>(u8()) | static_cast<uint16_t>(u8()) << 8; }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(u8()) << (8 * i);
        return v;
    }
    double f64() {
        uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string bytes() {
        uint32_t n = u32();
        std::string s(n, '\0');
        in.read(s.data(), n);
        if (!in) throw StoreError(file + ": truncated");
        return s;
    }

private:
    int get() {
        int c = in.get();
        if (c == EOF) throw StoreError(file + ": truncated");
        return c;
    }
};

inline void write_record(std::ostream& out, const Record& r) {
    for (uint64_t v : r) write_u64(out, v);
}

inline bool read_record(std::istream& in, Record& r) {
    char buf[24];
    in.read(buf, 24);
    if (in.gcount() == 0) return false;
    if (in.gcount() != 24) throw StoreError("index file: truncated record");
    for (int i = 0; i < 3; ++i) {
        uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[i * 8 + b])) << (8 * b);
        r[i] = v;
    }
    return true;
}

}  // namespace detail

struct StoreWriterOptions {
    bool force = false;              // overwrite an existing sealed store
    size_t spill_threshold = 1u << 22;  // records buffered per ordering before a run spills
};

// Write side of the store. create() drops the partial marker; seal() writes
// all files and removes it. A writer destroyed without seal() leaves the
// marker behind, which marks the store unusable.
class StoreWriter {
public:
    static StoreWriter create(const std::filesystem::path& dir, StoreWriterOptions options = {}) {
        namespace fs = std::filesystem;
        if (fs::exists(dir / "catalog.bin") && !options.force)
            throw StoreError("store already exists at " + dir.string() + " (use force to overwrite)");
        fs::create_directories(dir);
        for (const auto& entry : fs::directory_iterator(dir)) fs::remove_all(entry.path());
        std::ofstream marker(dir / "partial.marker");
        if (!marker) throw StoreError("cannot write to " + dir.string());
        return StoreWriter(dir, options);
    }

    StoreWriter(StoreWriter&&) = default;

    // Set semantics: returns false (and changes nothing) for duplicates.
    bool insert(const Triple& triple, TripleClass cls) {
        if (sealed_) throw StateError("store is sealed");
        if (!triple.s.valid() || !triple.p.valid() || !triple.o.valid())
            throw StoreError("triple with invalid term id");
        if (!seen_.insert(triple).second) return false;
        for (int i = 0; i < 3; ++i) {
            buffers_[i].push_back(detail::permute(triple, static_cast<IndexOrder>(i)));
            if (buffers_[i].size() >= options_.spill_threshold) spill(i);
        }
        catalog_.triples_total++;
        catalog_.per_predicate[triple.p]++;
        if (cls == TripleClass::Topology) {
            catalog_.topology++;
            catalog_.topology_edges++;
            entity_nodes_.insert(triple.s);
            entity_nodes_.insert(triple.o);
        } else {
            catalog_.attribute++;
        }
        return true;
    }

    const StoreCatalog& catalog() const { return catalog_; }

    // Flushes indices, catalog and the dictionary snapshot, then clears the
    // partial marker. The store is read-only afterwards.
    void seal(const Dictionary& dict, double densification_c = 1.75) {
        if (sealed_) throw StateError("store already sealed");
        catalog_.entity_nodes = entity_nodes_.size();
        catalog_.densification_c = densification_c;
        for (int i = 0; i < 3; ++i) write_index(static_cast<IndexOrder>(i));
        write_dictionary(dict);
        write_catalog();
        std::filesystem::remove(dir_ / "partial.marker");
        sealed_ = true;
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    StoreWriter(std::filesystem::path dir, StoreWriterOptions options)
        : dir_(std::move(dir)), options_(options) {}

    void spill(int index) {
        auto& buf = buffers_[index];
        std::sort(buf.begin(), buf.end());
        auto path = dir_ / ("run-" + std::to_string(index) + "-" +
                            std::to_string(runs_[index].size()) + ".tmp");
        std::ofstream out(path, std::ios::binary);
        for (const auto& r : buf) detail::write_record(out, r);
        if (!out) throw StoreError("failed writing spill run " + path.string());
        runs_[index].push_back(path);
        buf.clear();
    }

    void write_index(IndexOrder order) {
        int i = static_cast<int>(order);
        auto& buf = buffers_[i];
        std::sort(buf.begin(), buf.end());

        auto path = dir_ / detail::index_file_name(order);
        std::ofstream out(path, std::ios::binary);
        detail::write_u32(out, detail::kIndexMagic);
        detail::write_u16(out, detail::kFormatVersion);
        detail::write_u8(out, static_cast<uint8_t>(order));
        detail::write_u8(out, 0);
        detail::write_u64(out, catalog_.triples_total);

        if (runs_[i].empty()) {
            for (const auto& r : buf) detail::write_record(out, r);
        } else {
            merge_runs(i, out);
        }
        if (!out) throw StoreError("failed writing " + path.string());
        out.close();
        for (const auto& run : runs_[i]) std::filesystem::remove(run);
    }

    // K-way merge of the spilled runs plus the in-memory tail. Runs hold
    // disjoint record sets (dedup happened at insert), so no combining.
    void merge_runs(int index, std::ostream& out) {
        struct Source {
            std::ifstream file;
            const std::vector<detail::Record>* mem = nullptr;
            size_t mem_pos = 0;
            detail::Record head;
            bool ok = false;

            void advance() {
                if (mem) {
                    ok = mem_pos < mem->size();
                    if (ok) head = (*mem)[mem_pos++];
                } else {
                    ok = detail::read_record(file, head);
                }
            }
        };

        std::vector<Source> sources(runs_[index].size() + 1);
        for (size_t r = 0; r < runs_[index].size(); ++r) {
            sources[r].file.open(runs_[index][r], std::ios::binary);
            if (!sources[r].file) throw StoreError("missing spill run");
            sources[r].advance();
        }
        sources.back().mem = &buffers_[index];
        sources.back().advance();

        using HeapItem = std::pair<detail::Record, size_t>;
        std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
        for (size_t s = 0; s < sources.size(); ++s)
            if (sources[s].ok) heap.push({sources[s].head, s});
        while (!heap.empty()) {
            auto [rec, s] = heap.top();
            heap.pop();
            detail::write_record(out, rec);
            sources[s].advance();
            if (sources[s].ok) heap.push({sources[s].head, s});
        }
    }

    void write_dictionary(const Dictionary& dict) {
        std::ofstream out(dir_ / "dict.bin", std::ios::binary);
        detail::write_u32(out, detail::kDictMagic);
        detail::write_u16(out, detail::kFormatVersion);
        detail::write_u16(out, 0);
        detail::write_u64(out, dict.size());
        for (const Term& t : dict.terms()) {
            detail::write_u8(out, static_cast<uint8_t>(t.kind));
            uint8_t flags = (t.datatype.empty() ? 0 : 1) | (t.language.empty() ? 0 : 2);
            detail::write_u8(out, flags);
            detail::write_bytes(out, t.lexical);
            if (flags & 1) detail::write_bytes(out, t.datatype);
            if (flags & 2) detail::write_bytes(out, t.language);
        }
        if (!out) throw StoreError("failed writing dictionary snapshot");
    }

    void write_catalog() {
        std::ofstream out(dir_ / "catalog.bin", std::ios::binary);
        detail::write_u32(out, detail::kCatalogMagic);
        detail::write_u16(out, detail::kFormatVersion);
        detail::write_u16(out, 0);
        detail::write_u64(out, catalog_.triples_total);
        detail::write_u64(out, catalog_.topology);
        detail::write_u64(out, catalog_.attribute);
        detail::write_u64(out, catalog_.entity_nodes);
        detail::write_u64(out, catalog_.topology_edges);
        detail::write_f64(out, catalog_.densification_c);
        detail::write_u64(out, catalog_.per_predicate.size());
        for (const auto& [p, n] : catalog_.per_predicate) {
            detail::write_u64(out, p.value);
            detail::write_u64(out, n);
        }
        if (!out) throw StoreError("failed writing catalog");
    }

    std::filesystem::path dir_;
    StoreWriterOptions options_;
    std::unordered_set<Triple, TripleHash> seen_;
    std::array<std::vector<detail::Record>, 3> buffers_;
    std::array<std::vector<std::filesystem::path>, 3> runs_;
    std::unordered_set<TermId> entity_nodes_;
    StoreCatalog catalog_;
    bool sealed_ = false;
};

// Read side. Immutable once opened; safe for concurrent readers.
class TripleStore {
public:
    static TripleStore open(const std::filesystem::path& dir) {
        namespace fs = std::filesystem;
        if (fs::exists(dir / "partial.marker"))
            throw StoreError("store at " + dir.string() + " has a partial load marker");
        if (!fs::exists(dir / "catalog.bin"))
            throw StoreError("no store at " + dir.string());
        TripleStore store;
        store.dir_ = dir;
        store.read_catalog(dir / "catalog.bin");
        store.read_dictionary(dir / "dict.bin");
        for (int i = 0; i < 3; ++i)
            store.read_index(dir / detail::index_file_name(static_cast<IndexOrder>(i)),
                             static_cast<IndexOrder>(i));
        return store;
    }

    const StoreCatalog& catalog() const { return catalog_; }
    const Dictionary& dict() const { return dict_; }
    const std::filesystem::path& dir() const { return dir_; }
    uint64_t size() const { return catalog_.triples_total; }

    // Exact matches for all 8 bound/unbound shapes, in index order. The index
    // is chosen so that bound positions form a key prefix.
    std::vector<Triple> match(const TriplePattern& pattern) const {
        IndexOrder order = choose_index(pattern);
        const auto& index = indices_[static_cast<int>(order)];

        detail::Record lo{0, 0, 0};
        detail::Record hi{UINT64_MAX, UINT64_MAX, UINT64_MAX};
        int prefix = 0;
        auto bind = [&](const PatternSlot& slot) {
            if (prefix < 0 || !slot.is_bound()) {
                prefix = -1;
                return;
            }
            lo[prefix] = hi[prefix] = slot.term->value;
            ++prefix;
        };
        switch (order) {
            case IndexOrder::SPO: bind(pattern.s); bind(pattern.p); bind(pattern.o); break;
            case IndexOrder::POS: bind(pattern.p); bind(pattern.o); bind(pattern.s); break;
            case IndexOrder::OSP: bind(pattern.o); bind(pattern.s); bind(pattern.p); break;
        }

        auto begin = std::lower_bound(index.begin(), index.end(), lo);
        auto end = std::upper_bound(begin, index.end(), hi);
        std::vector<Triple> out;
        for (auto it = begin; it != end; ++it) {
            Triple t = detail::unpermute(*it, order);
            if (pattern.matches(t)) out.push_back(t);
        }
        return out;
    }

    void each_triple(const std::function<void(const Triple&)>& fn) const {
        for (const auto& r : indices_[0]) fn(detail::unpermute(r, IndexOrder::SPO));
    }

    // Classic independence heuristics; clamped to [1, total] on non-empty
    // stores so estimates stay inside the logical range.
    double cardinality_of(const TriplePattern& pattern) const {
        const double total = static_cast<double>(catalog_.triples_total);
        if (catalog_.triples_total == 0) return 0.0;
        const double nodes = std::max<double>(1.0, static_cast<double>(catalog_.entity_nodes));
        const bool sb = pattern.s.is_bound(), pb = pattern.p.is_bound(), ob = pattern.o.is_bound();

        double estimate;
        if (sb && pb && ob) {
            estimate = 1.0;
        } else if (!sb && !pb && !ob) {
            estimate = total;
        } else if (pb) {
            double pc = predicate_count(*pattern.p.term);
            if (sb || ob) estimate = pc / nodes;       // s+p or o+p (or s+p+o handled above)
            else estimate = pc;                        // p only: exact
        } else if (sb && ob) {
            estimate = total / (nodes * nodes);
        } else {
            estimate = total / nodes;                  // s only or o only
        }
        return std::clamp(estimate, 1.0, total);
    }

    double predicate_count(TermId p) const {
        auto it = catalog_.per_predicate.find(p);
        return it == catalog_.per_predicate.end() ? 0.0 : static_cast<double>(it->second);
    }

    // Raw sorted record view, used by integrity checks.
    const std::vector<detail::Record>& raw_index(IndexOrder order) const {
        return indices_[static_cast<int>(order)];
    }

private:
    static IndexOrder choose_index(const TriplePattern& pattern) {
        const bool sb = pattern.s.is_bound(), pb = pattern.p.is_bound(), ob = pattern.o.is_bound();
        if (sb) return pb || !ob ? IndexOrder::SPO : IndexOrder::OSP;  // s+o -> OSP, else SPO
        if (pb) return IndexOrder::POS;                                // p, p+o
        if (ob) return IndexOrder::OSP;                                // o
        return IndexOrder::SPO;                                        // full scan
    }

    void read_catalog(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw StoreError("cannot open " + path.string());
        detail::ByteReader r{in, path.string()};
        if (r.u32() != detail::kCatalogMagic) throw StoreError(path.string() + ": bad magic");
        if (r.u16() != detail::kFormatVersion) throw StoreError(path.string() + ": version mismatch");
        r.u16();
        catalog_.triples_total = r.u64();
        catalog_.topology = r.u64();
        catalog_.attribute = r.u64();
        catalog_.entity_nodes = r.u64();
        catalog_.topology_edges = r.u64();
        catalog_.densification_c = r.f64();
        uint64_t n = r.u64();
        for (uint64_t i = 0; i < n; ++i) {
            TermId p{r.u64()};
            catalog_.per_predicate[p] = r.u64();
        }
        if (!catalog_.consistent()) throw StoreError(path.string() + ": inconsistent counters");
    }

    void read_dictionary(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw StoreError("cannot open " + path.string());
        detail::ByteReader r{in, path.string()};
        if (r.u32() != detail::kDictMagic) throw StoreError(path.string() + ": bad magic");
        if (r.u16() != detail::kFormatVersion) throw StoreError(path.string() + ": version mismatch");
        r.u16();
        uint64_t count = r.u64();
        for (uint64_t i = 0; i < count; ++i) {
            auto kind = static_cast<TermKind>(r.u8());
            uint8_t flags = r.u8();
            Term t;
            t.kind = kind;
            t.lexical = r.bytes();
            if (flags & 1) t.datatype = r.bytes();
            if (flags & 2) t.language = r.bytes();
            dict_.intern(t);
        }
        dict_.seal();
    }

    void read_index(const std::filesystem::path& path, IndexOrder order) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw StoreError("cannot open " + path.string());
        detail::ByteReader r{in, path.string()};
        if (r.u32() != detail::kIndexMagic) throw StoreError(path.string() + ": bad magic");
        if (r.u16() != detail::kFormatVersion) throw StoreError(path.string() + ": version mismatch");
        if (r.u8() != static_cast<uint8_t>(order)) throw StoreError(path.string() + ": wrong ordering");
        r.u8();
        uint64_t count = r.u64();
        auto& index = indices_[static_cast<int>(order)];
        index.reserve(count);
        detail::Record rec;
        while (detail::read_record(in, rec)) index.push_back(rec);
        if (index.size() != count) throw StoreError(path.string() + ": record count mismatch");
        if (!std::is_sorted(index.begin(), index.end()))
            throw StoreError(path.string() + ": records out of order");
    }

    std::filesystem::path dir_;
    StoreCatalog catalog_;
    Dictionary dict_;
    std::array<std::vector<detail::Record>, 3> indices_;
};

}  // namespace pathtriple

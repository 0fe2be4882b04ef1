#pragma once
// Helpers that stand up a sealed store + topology graph, either from an
// N-Triples string/file or from random triples.

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "pathtriple/load.hpp"
#include "pathtriple/pathtriple.hpp"

namespace testenv {

using namespace pathtriple;
namespace fs = std::filesystem;

struct Env {
    fs::path dir;
    std::unique_ptr<TripleStore> store;
    TopologyGraph graph;
    LoadReport report;
    PartitionConfig config;

    Env() {
        dir = fs::temp_directory_path() /
              ("pathtriple-env-" + std::to_string(std::random_device{}()));
    }
    ~Env() {
        store.reset();
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    const Dictionary& dict() const { return store->dict(); }
};

inline std::string fixture_path(const char* name) {
    return std::string(PATHTRIPLE_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline PartitionConfig fixture_config() {
    std::ifstream in(fixture_path("partition.config"));
    REQUIRE(in.good());
    return PartitionConfig::parse(in);
}

inline std::unique_ptr<Env> load_ntriples(const std::string& text, PartitionConfig config,
                                          bool strict = true) {
    auto env = std::make_unique<Env>();
    env->config = config;
    Dictionary dict;
    StoreWriter writer = StoreWriter::create(env->dir);
    std::istringstream in(text);
    env->report = load_dataset(in, config, writer, env->graph, dict, strict);
    env->graph.seal();
    writer.seal(dict);
    env->store = std::make_unique<TripleStore>(TripleStore::open(env->dir));
    return env;
}

inline std::unique_ptr<Env> load_fixture(const char* name) {
    return load_ntriples(read_file(fixture_path(name)), fixture_config());
}

inline const std::map<std::string, std::string> kExPrefix = {{"", "http://example.org/"}};

}  // namespace testenv

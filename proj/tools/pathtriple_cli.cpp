// pathtriple: load N-Triples into a hybrid store, then query it.
//
// Exit codes: 0 ok, 2 query/data parse error, 3 store error, 4 config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pathtriple/pathtriple.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pathtriple;

namespace {

struct CommonOptions {
    std::string store_dir;
    std::string config_file;
    bool strict = false;
};

PartitionConfig load_partition_config(const CommonOptions& opts) {
    if (!opts.config_file.empty()) {
        std::ifstream in(opts.config_file);
        if (!in) throw ConfigError("cannot open config file " + opts.config_file);
        return PartitionConfig::parse(in);
    }
    // A sealed store carries the config it was loaded with.
    fs::path persisted = fs::path(opts.store_dir) / "partition.cfg";
    if (fs::exists(persisted)) {
        std::ifstream in(persisted);
        return PartitionConfig::parse(in);
    }
    return PartitionConfig::defaults();
}

struct OpenedStore {
    TripleStore store;
    TopologyGraph graph;
    PartitionConfig config;
};

OpenedStore open_store(const CommonOptions& opts) {
    if (opts.store_dir.empty())
        throw ConfigError("no store directory (use --store or PATHTRIPLE_STORE)");
    OpenedStore out{TripleStore::open(opts.store_dir), {}, load_partition_config(opts)};
    uint64_t edges = rebuild_topology(out.store, out.config, out.graph);
    if (edges != out.store.catalog().topology)
        throw StoreError("startup rebuild found " + std::to_string(edges) +
                         " topology triples, catalog says " +
                         std::to_string(out.store.catalog().topology));
    return out;
}

struct QueryOptions {
    std::string mode = "cost";
    std::string format = "tsv";
    std::string p_policy = "one";
    int lmax = 6;
    double c = 0.0;  // 0: take the store catalog's value
    std::string default_prefix;
    std::vector<std::string> prefix_defs;
};

CostModelParams cost_params(const QueryOptions& q, const StoreCatalog& catalog) {
    CostModelParams params;
    params.densification_c = q.c > 0.0 ? q.c : catalog.densification_c;
    params.path_length_horizon = q.lmax;
    if (q.p_policy == "one") params.p_policy = PClampPolicy::ClampToOne;
    else if (q.p_policy == "p99") params.p_policy = PClampPolicy::ClampTo99;
    else throw ConfigError("--p-policy must be 'one' or 'p99'");
    params.check();
    return params;
}

PlanMode plan_mode(const QueryOptions& q) {
    if (q.mode == "cost") return PlanMode::CostBased;
    if (q.mode == "noce") return PlanMode::NoCE;
    throw ConfigError("--mode must be 'cost' or 'noce'");
}

std::map<std::string, std::string> prefix_map(const QueryOptions& q) {
    std::map<std::string, std::string> prefixes;
    if (!q.default_prefix.empty()) prefixes[""] = q.default_prefix;
    for (const auto& def : q.prefix_defs) {
        auto eq = def.find('=');
        if (eq == std::string::npos) throw ConfigError("--prefix expects name=iri: " + def);
        prefixes[def.substr(0, eq)] = def.substr(eq + 1);
    }
    return prefixes;
}

std::string read_query_text(const std::string& inline_text, const std::string& file) {
    if (!inline_text.empty()) return inline_text;
    if (file.empty()) {  // stdin
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open query file " + file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Rows sorted lexicographically by their decoded terms.
std::vector<std::vector<std::string>> decode_rows(const BindingTable& table,
                                                  const Dictionary& dict) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        std::vector<std::string> decoded;
        decoded.reserve(row.size());
        for (TermId id : row) decoded.push_back(dict.resolve(id).to_string());
        rows.push_back(std::move(decoded));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

void print_results(const BindingTable& table, const Dictionary& dict, const std::string& format) {
    auto rows = decode_rows(table, dict);
    if (format == "json") {
        json out;
        out["columns"] = table.columns;
        out["rows"] = rows;
        std::cout << out.dump(1) << "\n";
        return;
    }
    if (format != "tsv") throw ConfigError("--format must be 'tsv' or 'json'");
    for (size_t i = 0; i < table.columns.size(); ++i)
        std::cout << (i ? "\t" : "") << "?" << table.columns[i];
    std::cout << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "\t" : "") << row[i];
        std::cout << "\n";
    }
}

int cmd_load(const CommonOptions& common, const std::string& input, bool force, double c_value) {
    if (common.store_dir.empty())
        throw ConfigError("no store directory (use --store or PATHTRIPLE_STORE)");
    std::ifstream in(input);
    if (!in) throw StoreError("cannot open input file " + input);
    PartitionConfig config =
        common.config_file.empty() ? PartitionConfig::defaults() : [&] {
            std::ifstream cf(common.config_file);
            if (!cf) throw ConfigError("cannot open config file " + common.config_file);
            return PartitionConfig::parse(cf);
        }();

    StoreWriterOptions opts;
    opts.force = force;
    StoreWriter writer = StoreWriter::create(common.store_dir, opts);
    Dictionary dict;
    TopologyGraph graph;
    LoadReport report = load_dataset(in, config, writer, graph, dict, common.strict);
    writer.seal(dict, c_value);
    {
        std::ofstream cfg(fs::path(common.store_dir) / "partition.cfg");
        config.serialize(cfg);
    }

    json out;
    out["store"] = common.store_dir;
    out["triplesTotal"] = report.triples_total;
    out["triplesTopology"] = report.triples_topology;
    out["triplesAttribute"] = report.triples_attribute;
    out["parseErrors"] = report.parse_errors;
    out["duplicates"] = report.duplicates;
    out["elapsedMs"] = report.elapsed_ms;
    std::cout << out.dump(1) << "\n";
    return 0;
}

int cmd_query(const CommonOptions& common, const QueryOptions& qopts, const std::string& text,
              bool explain_only) {
    OpenedStore opened = open_store(common);
    CostModelParams params = cost_params(qopts, opened.store.catalog());

    Query query = parse_query(text, prefix_map(qopts));
    for (const auto& w : query.warnings) std::cerr << "warning: " << w << "\n";
    Plan plan = lower_to_algebra(query, opened.store.dict());
    Plan ordered = order_joins(std::move(plan), opened.store.catalog(), opened.store, params,
                               plan_mode(qopts));

    if (explain_only) {
        std::cout << "mode: " << to_string(plan_mode(qopts))
                  << "  c: " << params.densification_c
                  << "  lmax: " << params.path_length_horizon
                  << "  p-policy: " << to_string(params.p_policy) << "\n";
        std::cout << explain(ordered, opened.store.dict());
        return 0;
    }

    Executor executor(opened.store, opened.graph, opened.store.dict());
    BindingTable result = executor.run(ordered);
    print_results(result, opened.store.dict(), qopts.format);
    return 0;
}

int cmd_stats(const CommonOptions& common) {
    OpenedStore opened = open_store(common);
    const StoreCatalog& cat = opened.store.catalog();
    json out;
    out["triplesTotal"] = cat.triples_total;
    out["topologyTriples"] = cat.topology;
    out["attributeTriples"] = cat.attribute;
    out["entityNodes"] = cat.entity_nodes;
    out["topologyEdges"] = cat.topology_edges;
    out["topologyRatio"] = cat.topology_ratio();
    out["densificationC"] = cat.densification_c;
    json preds = json::object();
    for (const auto& [p, n] : cat.per_predicate)
        preds[opened.store.dict().resolve(p).lexical] = n;
    out["perPredicate"] = preds;
    std::cout << out.dump(1) << "\n";
    return 0;
}

int cmd_bench(const CommonOptions& common, const QueryOptions& qopts, const std::string& suite_file,
              int reps, bool generate, const SynthGraphSpec& spec) {
    double load_ms = 0.0;
    if (generate) {
        if (common.store_dir.empty())
            throw ConfigError("bench --generate needs --store for the generated data");
        std::ostringstream data;
        generate_ntriples(spec, data);
        StoreWriterOptions opts;
        opts.force = true;
        StoreWriter writer = StoreWriter::create(common.store_dir, opts);
        Dictionary dict;
        TopologyGraph graph;
        std::istringstream in(data.str());
        PartitionConfig config = PartitionConfig::defaults();
        auto t0 = std::chrono::steady_clock::now();
        load_dataset(in, config, writer, graph, dict, true);
        writer.seal(dict);
        load_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
        std::ofstream cfg(fs::path(common.store_dir) / "partition.cfg");
        config.serialize(cfg);
    }

    OpenedStore opened = open_store(common);
    CostModelParams params = cost_params(qopts, opened.store.catalog());

    std::ifstream suite_in(suite_file);
    if (!suite_in) throw ConfigError("cannot open suite file " + suite_file);
    auto queries = parse_suite(suite_in);

    BenchReport report =
        run_bench(opened.store, opened.graph, queries, params, prefix_map(qopts), reps);
    report.load.dataset_id = common.store_dir;
    report.load.load_time_ms = load_ms;
    for (const auto& entry : fs::directory_iterator(common.store_dir))
        if (entry.is_regular_file()) report.load.disk_bytes += entry.file_size();
    report.load.memory_resident_triples = opened.graph.edge_count();

    json out;
    out["repetitions"] = report.repetitions;
    json load_row;
    load_row["datasetId"] = report.load.dataset_id;
    load_row["loadTimeMs"] = report.load.load_time_ms;
    load_row["diskBytes"] = report.load.disk_bytes;
    load_row["memoryResidentTriples"] = report.load.memory_resident_triples;
    out["load"] = load_row;
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row;
        row["query"] = r.query_id;
        row["mode"] = r.mode;
        row["wallMs"] = r.wall_ms;
        row["nodesVisited"] = r.nodes_visited;
        row["edgesExpanded"] = r.edges_expanded;
        row["intermediateRows"] = r.intermediate_rows;
        row["resultRows"] = r.result_rows;
        row["failed"] = r.failed;
        if (r.failed) row["error"] = r.error;
        rows.push_back(row);
    }
    out["rows"] = rows;
    std::cout << out.dump(1) << "\n";
    std::cerr << bench_tsv(report);
    return 0;
}

int cmd_generate(const SynthGraphSpec& spec, const std::string& out_file) {
    std::ofstream out(out_file);
    if (!out) throw StoreError("cannot write " + out_file);
    generate_ntriples(spec, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathtriple: hybrid RDF store with BFS-evaluated property paths"};
    app.require_subcommand(1);

    CommonOptions common;
    if (const char* env = std::getenv("PATHTRIPLE_STORE")) common.store_dir = env;
    app.add_option("--store", common.store_dir, "store directory")->envname("PATHTRIPLE_STORE");
    app.add_option("--config", common.config_file, "partition config file");
    app.add_flag("--strict", common.strict, "abort on the first malformed input line");

    // load
    auto* load = app.add_subcommand("load", "parse N-Triples into a new store");
    std::string load_input;
    bool load_force = false;
    double load_c = 1.75;
    load->add_option("file", load_input, "N-Triples input")->required();
    load->add_flag("--force", load_force, "overwrite an existing store");
    load->add_option("--c", load_c, "densification constant recorded in the catalog");

    // query / explain share options
    QueryOptions qopts;
    std::string query_text, query_file;
    auto add_query_options = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("query", query_text, "query text (omit to read stdin)");
        cmd->add_option("--file", query_file, "read the query from a file");
        cmd->add_option("--mode", qopts.mode, "cost | noce");
        cmd->add_option("--lmax", qopts.lmax, "length horizon for unbounded closures");
        cmd->add_option("--c", qopts.c, "densification constant override");
        cmd->add_option("--p-policy", qopts.p_policy, "one | p99");
        cmd->add_option("--default-prefix", qopts.default_prefix,
                        "namespace for bare names in queries");
        cmd->add_option("--prefix", qopts.prefix_defs, "extra prefix as name=iri");
        if (with_format) cmd->add_option("--format", qopts.format, "tsv | json");
    };
    auto* query = app.add_subcommand("query", "run a query against a sealed store");
    add_query_options(query, true);
    auto* explain_cmd = app.add_subcommand("explain", "print the ordered plan with estimates");
    add_query_options(explain_cmd, false);

    // stats
    auto* stats = app.add_subcommand("stats", "print the store catalog as JSON");

    // bench
    auto* bench = app.add_subcommand("bench", "run a query suite in all modes");
    std::string suite_file;
    int bench_reps = 10;
    bool bench_generate = false;
    SynthGraphSpec synth_spec;
    bench->add_option("suite", suite_file, "suite file: <name>\\t<query> per line")->required();
    bench->add_option("--reps", bench_reps, "repetitions per query and mode");
    bench->add_flag("--generate", bench_generate, "generate synthetic data into --store first");
    bench->add_option("--nodes", synth_spec.n_nodes, "generated node count");
    bench->add_option("--out-degree", synth_spec.target_out_degree, "target out-degree");
    bench->add_option("--predicates", synth_spec.n_topology_predicates, "relation predicate count");
    bench->add_option("--attrs-per-entity", synth_spec.attribute_triples_per_entity,
                      "attribute triples per entity");
    bench->add_option("--seed", synth_spec.seed, "generator seed");
    bench->add_option("--default-prefix", qopts.default_prefix,
                      "namespace for bare names in suite queries");
    bench->add_option("--lmax", qopts.lmax, "length horizon for unbounded closures");

    // generate
    auto* generate = app.add_subcommand("generate", "write a synthetic N-Triples file");
    std::string gen_out;
    SynthGraphSpec gen_spec;
    generate->add_option("out", gen_out, "output file")->required();
    generate->add_option("--nodes", gen_spec.n_nodes, "node count");
    generate->add_option("--out-degree", gen_spec.target_out_degree, "target out-degree");
    generate->add_option("--predicates", gen_spec.n_topology_predicates,
                         "relation predicate count");
    generate->add_option("--attrs-per-entity", gen_spec.attribute_triples_per_entity,
                         "attribute triples per entity");
    generate->add_option("--seed", gen_spec.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 4;
    }

    try {
        if (load->parsed()) return cmd_load(common, load_input, load_force, load_c);
        if (query->parsed())
            return cmd_query(common, qopts, read_query_text(query_text, query_file), false);
        if (explain_cmd->parsed())
            return cmd_query(common, qopts, read_query_text(query_text, query_file), true);
        if (stats->parsed()) return cmd_stats(common);
        if (bench->parsed())
            return cmd_bench(common, qopts, suite_file, bench_reps, bench_generate, synth_spec);
        if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const StoreError& e) {
        std::cerr << "store error: " << e.what() << "\n";
        return 3;
    } catch (const StateError& e) {
        std::cerr << "state error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

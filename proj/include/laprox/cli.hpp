#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "laprox/ecc.hpp"
#include "laprox/error_metrics.hpp"
#include "laprox/errors.hpp"
#include "laprox/graph.hpp"
#include "laprox/kc.hpp"
#include "laprox/oracle.hpp"
#include "laprox/sampling.hpp"

namespace laprox::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCapRefusal = 4;

namespace detail {

inline constexpr std::uint64_t kSweepStreamIndex = 0x73776565; // landmark sweep draws

struct CommonOpts {
    std::string graph_path;
    std::uint64_t samples = 10000;
    std::string landmark = "auto";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_path;
    std::string format = "json";
    bool emit_diag = false;
    bool emit_parts = false;
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline ParsedGraph load_graph(const std::string& path, std::ostream& err) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file '" + path + "'");
    ParsedGraph pg = parse_edge_list(in);
    if (pg.dropped_nodes > 0 || pg.dropped_edges > 0)
        err << "note: input not connected, kept largest component (dropped "
            << pg.dropped_nodes << " nodes, " << pg.dropped_edges << " edges)\n";
    return pg;
}

inline node_t resolve_landmark(const ParsedGraph& pg, const std::string& spec) {
    if (spec == "auto") return select_landmark(pg.graph);
    for (char c : spec)
        if (c < '0' || c > '9')
            throw usage_error("--landmark must be 'auto' or a nonnegative node id");
    const std::uint64_t original = std::stoull(spec);
    const auto it = pg.relabel.find(original);
    if (it == pg.relabel.end())
        throw input_error("landmark node " + spec +
                          " is not part of the largest connected component");
    return it->second;
}

inline void emit(const std::string& text, const CommonOpts& opts, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opts.out_path);
    if (!file) throw input_error("cannot open output file '" + opts.out_path + "'");
    file << text;
}

inline ordered_json base_report(const std::string& command, const CommonOpts& opts,
                                const ParsedGraph& pg) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["graph"] = opts.graph_path;
    j["n"] = pg.graph.num_nodes();
    j["m"] = pg.graph.num_edges();
    j["samples"] = opts.samples;
    j["seed"] = opts.seed;
    j["threads"] = opts.threads;
    return j;
}

inline void append_tsv_header(std::ostringstream& os, const ordered_json& meta) {
    for (const auto& [key, value] : meta.items()) {
        os << "# " << key << '\t';
        if (value.is_string())
            os << value.get<std::string>();
        else if (value.is_number_float())
            os << fmt(value.get<double>());
        else
            os << value.dump();
        os << '\n';
    }
}

inline std::vector<std::uint64_t> original_nodes(const ParsedGraph& pg) {
    return pg.original_ids;
}

inline ordered_json to_json_array(const std::vector<double>& values) {
    return ordered_json(values);
}

// ---- estimator subcommands ---------------------------------------------

inline int run_ecc(const std::string& command, const CommonOpts& opts, std::ostream& out,
                   std::ostream& err) {
    const ParsedGraph pg = load_graph(opts.graph_path, err);
    const node_t v = resolve_landmark(pg, opts.landmark);
    const DiagEstimate est = command == "ecc-spantree"
                                 ? estimate_spantree(pg.graph, v, opts.samples, opts.seed,
                                                     opts.threads)
                                 : estimate_lewalk(pg.graph, v, opts.samples, opts.seed,
                                                   opts.threads);
    const EccScores scores = ecc_scores(est);
    const DerivedMetrics derived = derived_metrics(est);
    for (node_t u : scores.flagged)
        err << "warning: nonpositive closeness denominator at node " << pg.original_ids[u]
            << ", emitting nan\n";

    ordered_json j = base_report(command, opts, pg);
    j["landmark"] = pg.original_ids[est.landmark];
    j["wall_time_s"] = est.wall_time_s;
    j["trace"] = est.trace;
    j["kirchhoff"] = derived.kirchhoff;
    j["nodes"] = original_nodes(pg);
    j["ecc"] = to_json_array(scores.values);
    if (opts.emit_diag) {
        j["diag"] = to_json_array(est.diag);
        j["rw_betweenness"] = to_json_array(derived.rw_betweenness);
    }
    ordered_json flagged = ordered_json::array();
    for (node_t u : scores.flagged) flagged.push_back(pg.original_ids[u]);
    j["flagged_nodes"] = flagged;

    if (opts.format == "json") {
        emit(j.dump(2) + "\n", opts, out);
    } else {
        std::ostringstream os;
        ordered_json meta = j;
        meta.erase("nodes");
        meta.erase("ecc");
        meta.erase("flagged_nodes");
        if (opts.emit_diag) {
            meta.erase("diag");
            meta.erase("rw_betweenness");
        }
        append_tsv_header(os, meta);
        os << "# node\tecc";
        if (opts.emit_diag) os << "\tdiag\trw_betweenness";
        os << '\n';
        for (node_t u = 0; u < pg.graph.num_nodes(); ++u) {
            os << pg.original_ids[u] << '\t' << fmt(scores.values[u]);
            if (opts.emit_diag)
                os << '\t' << fmt(est.diag[u]) << '\t' << fmt(derived.rw_betweenness[u]);
            os << '\n';
        }
        emit(os.str(), opts, out);
    }
    return kExitOk;
}

inline int run_kc(const std::string& command, const CommonOpts& opts, std::ostream& out,
                  std::ostream& err) {
    const ParsedGraph pg = load_graph(opts.graph_path, err);
    const node_t v = resolve_landmark(pg, opts.landmark);
    const KcEstimate est = command == "kc-spantree"
                               ? estimate_kc_spantree(pg.graph, v, opts.samples, opts.seed,
                                                      opts.threads)
                               : estimate_kc_lewalk(pg.graph, v, opts.samples, opts.seed,
                                                    opts.threads);

    ordered_json j = base_report(command, opts, pg);
    j["landmark"] = pg.original_ids[est.landmark];
    j["wall_time_s"] = est.wall_time_s;
    j["kappa"] = est.kappa;
    if (opts.emit_parts) {
        j["part_trace"] = est.part_trace;
        j["part_weighted"] = est.part_weighted;
        if (std::isfinite(est.sample_variance)) j["sample_variance"] = est.sample_variance;
    }

    if (opts.format == "json") {
        emit(j.dump(2) + "\n", opts, out);
    } else {
        std::ostringstream os;
        ordered_json meta = j;
        meta.erase("kappa");
        if (opts.emit_parts) {
            meta.erase("part_trace");
            meta.erase("part_weighted");
            if (j.contains("sample_variance")) meta.erase("sample_variance");
        }
        append_tsv_header(os, meta);
        os << "kappa\t" << fmt(est.kappa) << '\n';
        if (opts.emit_parts) {
            os << "part_trace\t" << fmt(est.part_trace) << '\n';
            os << "part_weighted\t" << fmt(est.part_weighted) << '\n';
            if (std::isfinite(est.sample_variance))
                os << "sample_variance\t" << fmt(est.sample_variance) << '\n';
        }
        emit(os.str(), opts, out);
    }
    return kExitOk;
}

inline int run_exact(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    const ParsedGraph pg = load_graph(opts.graph_path, err);
    const auto diag = oracle::exact_pinv_diag(pg.graph);
    const auto ecc = oracle::exact_ecc(pg.graph);
    const double kappa = oracle::exact_kc(pg.graph);
    double kirchhoff = 0.0;
    for (double d : diag) kirchhoff += d;

    ordered_json j;
    j["schema"] = 1;
    j["command"] = "exact";
    j["graph"] = opts.graph_path;
    j["n"] = pg.graph.num_nodes();
    j["m"] = pg.graph.num_edges();
    j["kappa"] = kappa;
    j["kirchhoff"] = kirchhoff;
    j["nodes"] = original_nodes(pg);
    j["ecc"] = to_json_array(ecc);
    j["diag"] = to_json_array(diag);

    if (opts.format == "json") {
        emit(j.dump(2) + "\n", opts, out);
    } else {
        std::ostringstream os;
        ordered_json meta = j;
        meta.erase("nodes");
        meta.erase("ecc");
        meta.erase("diag");
        append_tsv_header(os, meta);
        os << "# node\tecc\tdiag\n";
        for (node_t u = 0; u < pg.graph.num_nodes(); ++u)
            os << pg.original_ids[u] << '\t' << fmt(ecc[u]) << '\t' << fmt(diag[u]) << '\n';
        emit(os.str(), opts, out);
    }
    return kExitOk;
}

inline int run_stats(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    const ParsedGraph pg = load_graph(opts.graph_path, err);
    const node_t v = resolve_landmark(pg, opts.landmark);
    const auto t0 = std::chrono::steady_clock::now();
    const WilsonRunStats stats =
        wilson_step_stats(pg.graph, v, opts.samples, opts.seed, opts.threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double n = pg.graph.num_nodes();

    ordered_json j = base_report("stats", opts, pg);
    j["landmark"] = pg.original_ids[v];
    j["wall_time_s"] = wall;
    j["mean_steps"] = stats.mean_steps;
    j["stddev_steps"] = stats.stddev_steps;
    j["trace_over_n"] = stats.mean_steps / n;
    j["stderr_trace_over_n"] =
        stats.stddev_steps / (n * std::sqrt(static_cast<double>(stats.samples)));

    if (opts.format == "json") {
        emit(j.dump(2) + "\n", opts, out);
    } else {
        std::ostringstream os;
        ordered_json meta = j;
        for (const char* key : {"mean_steps", "stddev_steps", "trace_over_n",
                                "stderr_trace_over_n"})
            meta.erase(key);
        append_tsv_header(os, meta);
        os << "mean_steps\t" << fmt(stats.mean_steps) << '\n';
        os << "stddev_steps\t" << fmt(stats.stddev_steps) << '\n';
        os << "trace_over_n\t" << fmt(stats.mean_steps / n) << '\n';
        os << "stderr_trace_over_n\t"
           << fmt(stats.stddev_steps / (n * std::sqrt(static_cast<double>(stats.samples)))) << '\n';
        emit(os.str(), opts, out);
    }
    return kExitOk;
}

// ---- compare -------------------------------------------------------------

struct FileData {
    std::map<std::string, double> scalars;
    std::vector<std::uint64_t> nodes;
    std::map<std::string, std::vector<double>> columns;
};

inline FileData read_result_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open result file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw input_error("result file '" + path + "' is empty");

    FileData data;
    if (text[first] == '{') {
        ordered_json j;
        try {
            j = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw input_error("cannot parse JSON in '" + path + "': " + e.what());
        }
        for (const auto& [key, value] : j.items()) {
            if (value.is_number() && key != "schema" && key != "n" && key != "m" &&
                key != "samples" && key != "seed" && key != "threads" && key != "landmark" &&
                key != "wall_time_s")
                data.scalars[key] = value.get<double>();
            if (value.is_array() && key == "nodes")
                data.nodes = value.get<std::vector<std::uint64_t>>();
            if (value.is_array() && key != "nodes" && key != "flagged_nodes" &&
                !value.empty() && value[0].is_number())
                data.columns[key] = value.get<std::vector<double>>();
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        std::vector<std::string> column_names;
        while (std::getline(lines, line)) {
            if (line.empty() || line == "\r") continue;
            if (line[0] == '#') {
                std::istringstream fields(line.substr(1));
                std::string key;
                fields >> key;
                if (key == "node") {
                    column_names.clear();
                    std::string name;
                    while (fields >> name) column_names.push_back(name);
                    for (const auto& name : column_names) data.columns[name] = {};
                } else {
                    std::string value;
                    fields >> value;
                    try {
                        data.scalars[key] = std::stod(value);
                    } catch (...) {
                        // non-numeric metadata, ignore
                    }
                }
                continue;
            }
            std::istringstream fields(line);
            if (column_names.empty()) {
                // bare "key value" rows (kc/stats TSV bodies)
                std::string key;
                double value = 0.0;
                if (fields >> key >> value) data.scalars[key] = value;
                continue;
            }
            std::uint64_t id = 0;
            if (!(fields >> id)) throw input_error("malformed row in '" + path + "': " + line);
            data.nodes.push_back(id);
            for (const auto& name : column_names) {
                double value = 0.0;
                if (!(fields >> value))
                    throw input_error("missing column '" + name + "' in '" + path + "'");
                data.columns[name].push_back(value);
            }
        }
    }
    return data;
}

inline int run_compare(const std::string& est_path, const std::string& ref_path,
                       const std::string& metric, const std::string& field,
                       const std::string& format, const std::string& out_path,
                       std::ostream& out) {
    const FileData est = read_result_file(est_path);
    const FileData ref = read_result_file(ref_path);

    std::string resolved = field;
    if (resolved == "auto") {
        for (const char* candidate : {"ecc", "diag", "rw_betweenness"})
            if (est.columns.count(candidate) && ref.columns.count(candidate)) {
                resolved = candidate;
                break;
            }
        if (resolved == "auto")
            for (const char* candidate : {"kappa", "trace_over_n", "trace", "kirchhoff"})
                if (est.scalars.count(candidate) && ref.scalars.count(candidate)) {
                    resolved = candidate;
                    break;
                }
        if (resolved == "auto")
            throw input_error("no common field to compare; use --field");
    }

    ordered_json j;
    j["schema"] = 1;
    j["command"] = "compare";
    j["field"] = resolved;

    const bool is_vector = est.columns.count(resolved) && ref.columns.count(resolved);
    if (is_vector) {
        if (!est.nodes.empty() && !ref.nodes.empty() && est.nodes != ref.nodes)
            throw input_error("node id sets differ between the two files");
        if (metric == "rel" || metric == "abs")
            throw usage_error("metric '" + metric + "' applies to scalar fields");
        const auto& a = est.columns.at(resolved);
        const auto& b = ref.columns.at(resolved);
        const VectorMetrics m = vector_error_metrics(a, b);
        if (metric.empty() || metric == "maxrel") j["maxrel"] = m.max_rel;
        if (metric.empty() || metric == "l1") j["l1"] = m.l1;
    } else if (est.scalars.count(resolved) && ref.scalars.count(resolved)) {
        if (metric == "maxrel" || metric == "l1")
            throw usage_error("metric '" + metric + "' applies to vector fields");
        const ScalarMetrics m = scalar_error_metrics(est.scalars.at(resolved),
                                                     ref.scalars.at(resolved));
        if (metric.empty() || metric == "rel") j["rel"] = m.rel;
        if (metric.empty() || metric == "abs") j["abs"] = m.abs;
    } else {
        throw input_error("field '" + resolved + "' not present in both files");
    }

    CommonOpts sink_opts;
    sink_opts.out_path = out_path;
    if (format == "json") {
        emit(j.dump(2) + "\n", sink_opts, out);
    } else {
        std::ostringstream os;
        os << "# field\t" << resolved << '\n';
        for (const char* key : {"maxrel", "l1", "rel", "abs"})
            if (j.contains(key)) os << key << '\t' << fmt(j[key].get<double>()) << '\n';
        emit(os.str(), sink_opts, out);
    }
    return kExitOk;
}

// ---- landmark sweep -------------------------------------------------------

inline int run_landmark_sweep(const CommonOpts& opts, const std::string& estimator,
                              std::uint64_t count, std::ostream& out, std::ostream& err) {
    const ParsedGraph pg = load_graph(opts.graph_path, err);
    const Graph& g = pg.graph;
    const node_t n = g.num_nodes();

    std::vector<node_t> landmarks(n);
    for (node_t u = 0; u < n; ++u) landmarks[u] = u;
    if (count > 0 && count < n) {
        RngStream rng = make_stream(opts.seed, kSweepStreamIndex);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto j = i + rng.bounded(n - i);
            std::swap(landmarks[i], landmarks[j]);
        }
        landmarks.resize(count);
    }

    ordered_json results = ordered_json::array();
    for (node_t v : landmarks) {
        ordered_json row;
        row["landmark"] = pg.original_ids[v];
        if (estimator == "kc-spantree" || estimator == "kc-lewalk") {
            const KcEstimate est =
                estimator == "kc-spantree"
                    ? estimate_kc_spantree(g, v, opts.samples, opts.seed, opts.threads)
                    : estimate_kc_lewalk(g, v, opts.samples, opts.seed, opts.threads);
            row["value"] = est.kappa;
            row["wall_time_s"] = est.wall_time_s;
        } else {
            const DiagEstimate est =
                estimator == "ecc-spantree"
                    ? estimate_spantree(g, v, opts.samples, opts.seed, opts.threads)
                    : estimate_lewalk(g, v, opts.samples, opts.seed, opts.threads);
            row["value"] = est.trace;
            row["wall_time_s"] = est.wall_time_s;
        }
        results.push_back(std::move(row));
    }

    ordered_json j = base_report("landmark-sweep", opts, pg);
    j["estimator"] = estimator;
    j["landmarks"] = landmarks.size();
    j["value_meaning"] = (estimator.rfind("kc-", 0) == 0) ? "kappa" : "trace";
    j["results"] = results;

    if (opts.format == "json") {
        emit(j.dump(2) + "\n", opts, out);
    } else {
        std::ostringstream os;
        ordered_json meta = j;
        meta.erase("results");
        append_tsv_header(os, meta);
        os << "# landmark\tvalue\twall_time_s\n";
        for (const auto& row : results)
            os << row["landmark"].get<std::uint64_t>() << '\t'
               << fmt(row["value"].get<double>()) << '\t'
               << fmt(row["wall_time_s"].get<double>()) << '\n';
        emit(os.str(), opts, out);
    }
    return kExitOk;
}

inline void add_common_options(CLI::App* sub, CommonOpts& opts, bool with_landmark = true) {
    sub->add_option("--graph", opts.graph_path, "edge-list graph file")->required();
    sub->add_option("--samples", opts.samples, "Monte Carlo sample count");
    if (with_landmark)
        sub->add_option("--landmark", opts.landmark, "'auto' (highest degree) or a node id");
    sub->add_option("--seed", opts.seed, "master RNG seed");
    sub->add_option("--threads", opts.threads, "worker threads for the sample loop");
    sub->add_option("--out", opts.out_path, "write output to this file instead of stdout");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
}

} // namespace detail

// Parses argv-style arguments (without the program name), dispatches, writes
// results to `out` and diagnostics to `err`. Exit codes: 0 success, 1 usage,
// 2 input/parse, 3 numeric/internal consistency, 4 oracle-cap refusal.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo estimators for the Laplacian pseudo-inverse diagonal "
                 "(electrical closeness) and Kemeny's constant, with dense exact oracles"};
    app.name("laprox");
    app.require_subcommand(1);

    detail::CommonOpts ecc_st, ecc_lw, kc_st, kc_lw, exact, stats, sweep;
    std::string sweep_estimator;
    std::uint64_t sweep_count = 0;
    std::string cmp_est, cmp_ref, cmp_metric, cmp_field = "auto", cmp_format = "json",
                cmp_out;

    CLI::App* s1 = app.add_subcommand("ecc-spantree",
                                      "electrical closeness via spanning-tree sampling");
    detail::add_common_options(s1, ecc_st);
    s1->add_flag("--emit-diag", ecc_st.emit_diag, "include the pseudo-inverse diagonal");

    CLI::App* s2 = app.add_subcommand("ecc-lewalk",
                                      "electrical closeness via loop-erased walk sampling");
    detail::add_common_options(s2, ecc_lw);
    s2->add_flag("--emit-diag", ecc_lw.emit_diag, "include the pseudo-inverse diagonal");

    CLI::App* s3 = app.add_subcommand("kc-spantree",
                                      "Kemeny's constant via spanning-tree sampling");
    detail::add_common_options(s3, kc_st);
    s3->add_flag("--emit-parts", kc_st.emit_parts, "include the decomposition parts");

    CLI::App* s4 = app.add_subcommand("kc-lewalk",
                                      "Kemeny's constant via loop-erased walk sampling");
    detail::add_common_options(s4, kc_lw);
    s4->add_flag("--emit-parts", kc_lw.emit_parts, "include the decomposition parts");

    CLI::App* s5 = app.add_subcommand("exact", "dense oracle ECC and Kemeny's constant");
    s5->add_option("--graph", exact.graph_path, "edge-list graph file")->required();
    s5->add_option("--out", exact.out_path, "write output to this file instead of stdout");
    s5->add_option("--format", exact.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));

    CLI::App* s6 = app.add_subcommand("compare", "error metrics between two result files");
    s6->add_option("--est", cmp_est, "estimated result file")->required();
    s6->add_option("--ref", cmp_ref, "reference result file")->required();
    s6->add_option("--metric", cmp_metric, "restrict to one metric")
        ->check(CLI::IsMember({"maxrel", "l1", "rel", "abs"}));
    s6->add_option("--field", cmp_field, "field to compare (default: auto)");
    s6->add_option("--format", cmp_format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
    s6->add_option("--out", cmp_out, "write output to this file instead of stdout");

    CLI::App* s7 = app.add_subcommand("stats",
                                      "mean loop-erased walk cost Tr((I-P_v)^{-1})/n");
    detail::add_common_options(s7, stats);

    CLI::App* s8 = app.add_subcommand("landmark-sweep",
                                      "run one estimator over many landmark choices");
    detail::add_common_options(s8, sweep, /*with_landmark=*/false);
    s8->add_option("--estimator", sweep_estimator, "estimator to sweep")
        ->required()
        ->check(CLI::IsMember({"ecc-spantree", "ecc-lewalk", "kc-spantree", "kc-lewalk"}));
    s8->add_option("--count", sweep_count, "number of sampled landmarks (0 = all nodes)");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("laprox");
    for (const auto& a : args) argv_storage.push_back(a);
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (s1->parsed()) return detail::run_ecc("ecc-spantree", ecc_st, out, err);
        if (s2->parsed()) return detail::run_ecc("ecc-lewalk", ecc_lw, out, err);
        if (s3->parsed()) return detail::run_kc("kc-spantree", kc_st, out, err);
        if (s4->parsed()) return detail::run_kc("kc-lewalk", kc_lw, out, err);
        if (s5->parsed()) return detail::run_exact(exact, out, err);
        if (s6->parsed())
            return detail::run_compare(cmp_est, cmp_ref, cmp_metric, cmp_field, cmp_format,
                                       cmp_out, out);
        if (s7->parsed()) return detail::run_stats(stats, out, err);
        if (s8->parsed())
            return detail::run_landmark_sweep(sweep, sweep_estimator, sweep_count, out, err);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cap_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitCapRefusal;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

} // namespace laprox::cli

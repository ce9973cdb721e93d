// episource: epidemic source inference from infection snapshots.
// Subcommands: generate | simulate | infer | evaluate | stats | plot.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "episource/baselines.hpp"
#include "episource/errors.hpp"
#include "episource/evaluation.hpp"
#include "episource/exact.hpp"
#include "episource/generators.hpp"
#include "episource/graph.hpp"
#include "episource/greedy.hpp"
#include "episource/io.hpp"
#include "episource/mean_field.hpp"
#include "episource/simulate.hpp"
#include "manifest.hpp"
#include "svg_plot.hpp"

namespace {

using nlohmann::json;
using namespace episource;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_threads() {
    if (const char* env = std::getenv("EPISOURCE_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 0;  // auto
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    return out;
}

// Two-column sidecar mapping dense ids back to the input labels, written
// next to the main output when compaction remapped anything.
void write_label_sidecar(const std::string& out_path, const LoadedGraph& lg) {
    if (!lg.labels) return;
    auto out = open_output(out_path + ".labels.tsv");
    write_label_table(out, *lg.labels);
}

// Reports node ids in the input's own labeling (original labels when a
// compaction table exists, otherwise the raw base).
long long output_label(node_id v, const LabelTable* labels, bool one_based) {
    if (labels) return labels->to_original(v);
    return static_cast<long long>(v) + (one_based ? 1 : 0);
}

void write_ranking_csv(std::ostream& out, const Ranking& ranking, const LabelTable* labels,
                       bool one_based) {
    out << "node,score,rank\n";
    char buf[96];
    for (const auto& e : ranking.entries()) {
        std::snprintf(buf, sizeof buf, "%lld,%.10g,%.10g\n",
                      output_label(e.node, labels, one_based), e.score, e.rank);
        out << buf;
    }
}

// ---- generate ----------------------------------------------------------

struct GenerateArgs {
    std::string type;
    std::string out;
    int degree = 3;
    int depth = 5;
    node_id nodes = 100;
    DcsbmConfig sbm;
    std::uint64_t seed = 0;
};

Graph build_generator(const std::string& type, const GenerateArgs& a, json& config_echo) {
    if (type == "regular-tree") {
        config_echo = {{"type", type}, {"degree", a.degree}, {"depth", a.depth}};
        return regular_tree(a.degree, a.depth);
    }
    if (type == "random-tree") {
        config_echo = {{"type", type}, {"nodes", a.nodes}, {"seed", a.seed}};
        return random_tree(a.nodes, a.seed);
    }
    if (type == "dcsbm") {
        DcsbmConfig cfg = a.sbm;
        cfg.n = a.nodes;
        cfg.seed = a.seed;
        config_echo = {{"type", type},
                       {"nodes", cfg.n},
                       {"communities", cfg.communities},
                       {"p_in", cfg.p_in},
                       {"p_out", cfg.p_out},
                       {"pareto_alpha", cfg.pareto_alpha},
                       {"pareto_threshold", cfg.pareto_threshold},
                       {"target_mean_degree", cfg.target_mean_degree},
                       {"unit_theta", cfg.unit_theta},
                       {"largest_component", cfg.largest_component},
                       {"seed", cfg.seed}};
        return dcsbm(cfg);
    }
    throw UsageError("unknown generator type '" + type +
                     "' (valid: regular-tree, random-tree, dcsbm)");
}

int run_generate(const GenerateArgs& a) {
    json echo;
    Graph g = build_generator(a.type, a, echo);
    auto out = open_output(a.out);
    write_edge_list(out, g);
    out.close();
    std::ofstream side(a.out + ".json");
    side << echo.dump(2) << '\n';
    cli::write_manifest(a.out, "generate", echo, a.seed, {});
    const GraphStats s = graph_stats(g);
    std::fprintf(stderr, "wrote %s: n=%d m=%lld mean_deg=%.3g\n", a.out.c_str(), s.n,
                 static_cast<long long>(g.num_edges()), s.mean_degree);
    return kExitOk;
}

// ---- graph loading shared by simulate/infer/stats/evaluate --------------

struct GraphArgs {
    std::string path;
    bool one_based = false;
    bool compact_labels = false;
};

LoadedGraph load_graph(const GraphArgs& a) {
    return load_edge_list_file(a.path, a.one_based ? Indexing::one_based : Indexing::zero_based,
                               a.compact_labels);
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
    GraphArgs graph;
    std::vector<long long> sources;
    node_id size = 0;
    double time = -1.0;
    double beta = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& a) {
    if (a.sources.empty()) throw UsageError("simulate: at least one --source required");
    const bool by_size = a.size > 0, by_time = a.time >= 0.0;
    if (by_size == by_time)
        throw UsageError("simulate: choose exactly one stop rule, --size or --time");
    LoadedGraph lg = load_graph(a.graph);
    const long long shift = a.graph.one_based && !lg.labels ? 1 : 0;
    std::vector<node_id> src;
    for (long long s : a.sources)
        src.push_back(lg.labels ? lg.labels->to_dense(s) : static_cast<node_id>(s - shift));
    NodeSet sources(src);
    std::mt19937_64 rng(a.seed);
    InfectionTrace trace = by_size ? simulate_until_size(lg.graph, sources, a.size, rng)
                                   : simulate_until_time(lg.graph, sources, a.beta, a.time, rng);
    auto out = open_output(a.out);
    out << (trace.timed() ? "step,node,time\n" : "step,node\n");
    char buf[96];
    for (std::size_t i = 0; i < trace.order.size(); ++i) {
        const long long label =
            lg.labels ? lg.labels->to_original(trace.order[i]) : trace.order[i] + shift;
        if (trace.timed())
            std::snprintf(buf, sizeof buf, "%zu,%lld,%.10g\n", i, label, trace.times[i]);
        else
            std::snprintf(buf, sizeof buf, "%zu,%lld\n", i, label);
        out << buf;
    }
    out.close();
    write_label_sidecar(a.out, lg);
    json cfg{{"graph", a.graph.path}, {"sources", a.sources}, {"seed", a.seed}};
    if (by_size) cfg["size"] = a.size;
    else {
        cfg["time"] = a.time;
        cfg["beta"] = a.beta;
    }
    cli::write_manifest(a.out, "simulate", cfg, a.seed, {a.graph.path});
    return kExitOk;
}

// ---- infer ---------------------------------------------------------------

struct InferArgs {
    GraphArgs graph;
    std::string snapshot_path;
    std::string method;
    int sources = 1;
    int bayes_cap = kDefaultDpLimit;
    std::uint64_t seed = 0;
    std::string out;          // empty: stdout
    std::string elim_log;     // ge only
    std::string dump_system;  // mfa only: prefix for S/z dumps
};

int run_infer(const InferArgs& a) {
    const auto method = parse_method(a.method);
    const bool is_multi = a.method == "multi";
    if (!method && !is_multi) {
        std::string valid = "multi";
        for (auto name : method_names()) valid = std::string(name) + ", " + valid;
        throw UsageError("unknown method '" + a.method + "' (valid: " + valid + ")");
    }
    LoadedGraph lg = load_graph(a.graph);
    const Graph& g = lg.graph;
    const LabelTable* labels = lg.labels ? &*lg.labels : nullptr;
    NodeSet snapshot = load_node_set_file(
        a.snapshot_path, a.graph.one_based ? Indexing::one_based : Indexing::zero_based, labels);
    for (node_id v : snapshot) g.check_node(v);

    std::ostringstream body;
    if (is_multi) {
        NodeSet best = multi_source_map(g, snapshot, a.sources, a.bayes_cap);
        const double value = transition_prob_forward(g, snapshot, a.bayes_cap).value(best);
        body << "node,score,rank\n";
        char buf[96];
        for (node_id v : best) {
            std::snprintf(buf, sizeof buf, "%lld,%.10g,1\n",
                          output_label(v, labels, a.graph.one_based), value);
            body << buf;
        }
    } else {
        Ranking ranking;
        std::mt19937_64 rng(a.seed);
        switch (*method) {
            case Method::bayes:
                ranking = rank_estimate(posterior(g, snapshot, a.bayes_cap));
                break;
            case Method::bayes_dist:
                ranking = distance_rank(g, posterior(g, snapshot, a.bayes_cap));
                break;
            case Method::ge: {
                if (!a.elim_log.empty()) {
                    EliminationLog log = ge_eliminate(g, snapshot);
                    auto lout = open_output(a.elim_log);
                    lout << "step,node,score\n";
                    char buf[96];
                    for (std::size_t i = 0; i < log.removed.size(); ++i) {
                        std::snprintf(buf, sizeof buf, "%zu,%lld,%.10g\n", i + 1,
                                      output_label(log.removed[i].node, labels,
                                                   a.graph.one_based),
                                      log.removed[i].score);
                        lout << buf;
                    }
                }
                ranking = ge_rank(g, snapshot);
                break;
            }
            case Method::mfa: {
                if (!a.dump_system.empty()) {
                    MeanFieldSystem sys = build_system(g, snapshot);
                    auto sout = open_output(a.dump_system + ".S.csv");
                    sout << "row,col,value\n";
                    for (const auto& t : sys.sparse_triplets())
                        sout << t.row << ',' << t.col << ',' << t.value << '\n';
                    auto zout = open_output(a.dump_system + ".z.csv");
                    zout << "index,node,z,u\n";
                    for (int i = 0; i < sys.dim(); ++i)
                        zout << i << ',' << sys.nodes()[static_cast<std::size_t>(i)] << ','
                             << sys.z()[static_cast<std::size_t>(i)] << ','
                             << sys.u()[static_cast<std::size_t>(i)] << '\n';
                }
                ranking = mfa_rank(g, snapshot);
                break;
            }
            case Method::rc:
                ranking = rumor_centrality_rank(g, snapshot);
                break;
            case Method::jc:
                ranking = jordan_center_rank(g, snapshot);
                break;
            case Method::dc:
                ranking = degree_centrality_rank(g, snapshot);
                break;
            case Method::random:
                ranking = random_rank(snapshot, rng);
                break;
        }
        write_ranking_csv(body, ranking, labels, a.graph.one_based);
    }

    if (a.out.empty()) {
        std::cout << body.str();
    } else {
        auto out = open_output(a.out);
        out << body.str();
        out.close();
        write_label_sidecar(a.out, lg);
        json cfg{{"graph", a.graph.path}, {"snapshot", a.snapshot_path},
                 {"method", a.method},    {"sources", a.sources},
                 {"seed", a.seed},        {"bayes_cap", a.bayes_cap}};
        cli::write_manifest(a.out, "infer", cfg, a.seed, {a.graph.path, a.snapshot_path});
    }
    return kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
    std::string config_path;
    std::string out_dir;
    // Flag overrides (empty/negative: keep config value).
    std::string graph_file;
    bool one_based = false;
    std::string generator_json;
    std::string methods_csv;
    std::string sizes_csv;
    int replicates = -1;
    long long seed = -1;
    std::string normalize;
    int bayes_cap = -1;
    int threads = -1;
    bool no_timing = false;
};

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Graph graph_from_generator_json(const json& params) {
    const std::string type = params.at("type").get<std::string>();
    GenerateArgs a;
    a.degree = params.value("degree", 3);
    a.depth = params.value("depth", 5);
    a.nodes = params.value("nodes", 100);
    a.seed = params.value("seed", 0ull);
    a.sbm.communities = params.value("communities", 1);
    a.sbm.p_in = params.value("p_in", 0.5);
    a.sbm.p_out = params.value("p_out", 0.02);
    a.sbm.pareto_alpha = params.value("pareto_alpha", 2.0);
    a.sbm.pareto_threshold = params.value("pareto_threshold", 1.0);
    a.sbm.target_mean_degree = params.value("target_mean_degree", 10.0);
    a.sbm.unit_theta = params.value("unit_theta", false);
    a.sbm.largest_component = params.value("largest_component", false);
    json echo;
    return build_generator(type, a, echo);
}

int run_evaluate(const EvaluateArgs& a) {
    json cfg = json::object();
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw parse_error("cannot open config file: " + a.config_path);
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            throw parse_error("config parse failure: " + std::string(e.what()));
        }
    }
    // Flag overrides.
    if (!a.graph_file.empty()) cfg["graph"] = json{{"file", a.graph_file}, {"one_based", a.one_based}};
    if (!a.generator_json.empty()) cfg["graph"] = json{{"generator", json::parse(a.generator_json)}};
    if (!a.methods_csv.empty()) cfg["methods"] = split_csv(a.methods_csv);
    if (!a.sizes_csv.empty()) {
        json sizes = json::array();
        for (const auto& s : split_csv(a.sizes_csv)) sizes.push_back(std::stoi(s));
        cfg["sizes"] = sizes;
    }
    if (a.replicates >= 0) cfg["replicates"] = a.replicates;
    if (a.seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(a.seed);
    if (!a.normalize.empty()) cfg["normalization"] = a.normalize;
    if (a.bayes_cap >= 0) cfg["bayes_cap"] = a.bayes_cap;
    if (a.threads >= 0) cfg["threads"] = a.threads;
    if (a.no_timing) cfg["timing"] = false;

    if (!cfg.contains("graph"))
        throw UsageError("evaluate: no graph given (config \"graph\" or --graph/--generator)");

    ExperimentConfig ecfg;
    for (const auto& name : cfg.value("methods", std::vector<std::string>{})) {
        auto m = parse_method(name);
        if (!m) throw UsageError("unknown method '" + name + "' in methods list");
        ecfg.methods.push_back(*m);
    }
    for (const auto& k : cfg.value("sizes", std::vector<int>{}))
        ecfg.sizes.push_back(static_cast<node_id>(k));
    ecfg.replicates = cfg.value("replicates", 500);
    ecfg.seed = cfg.value("seed", 0ull);
    const std::string norm = cfg.value("normalization", "snapshot");
    if (norm == "snapshot") ecfg.normalization = Normalization::snapshot;
    else if (norm == "network") ecfg.normalization = Normalization::network;
    else throw UsageError("normalization must be 'snapshot' or 'network'");
    ecfg.bayes_cap = cfg.value("bayes_cap", 10);
    ecfg.threads = cfg.value("threads", default_threads());
    const bool timing = cfg.value("timing", true);

    const json& gspec = cfg["graph"];
    Graph g;
    std::vector<std::string> inputs;
    if (gspec.contains("file")) {
        GraphArgs ga{gspec.at("file").get<std::string>(), gspec.value("one_based", false),
                     gspec.value("compact_labels", false)};
        g = load_graph(ga).graph;
        inputs.push_back(ga.path);
    } else if (gspec.contains("generator")) {
        g = graph_from_generator_json(gspec["generator"]);
    } else {
        throw UsageError("evaluate: graph spec needs \"file\" or \"generator\"");
    }

    ExperimentResult result = run_experiment(g, ecfg);

    namespace fs = std::filesystem;
    fs::create_directories(a.out_dir);
    {
        auto out = open_output((fs::path(a.out_dir) / "results.csv").string());
        write_results_csv(out, result, timing);
    }
    {
        json meta{{"config", cfg},
                  {"seed", ecfg.seed},
                  {"graph_stats",
                   {{"n", result.stats.n},
                    {"mean_degree", result.stats.mean_degree},
                    {"max_degree", result.stats.max_degree},
                    {"clustering", result.stats.clustering}}}};
        auto out = open_output((fs::path(a.out_dir) / "metadata.json").string());
        out << meta.dump(2) << '\n';
    }
    if (!a.config_path.empty()) inputs.push_back(a.config_path);
    cli::write_manifest(a.out_dir, "evaluate", cfg, ecfg.seed, inputs);
    return kExitOk;
}

// ---- stats -----------------------------------------------------------------

int run_stats(const GraphArgs& ga, const std::string& out_path) {
    LoadedGraph lg = load_graph(ga);
    const GraphStats s = graph_stats(lg.graph);
    char buf[160];
    std::snprintf(buf, sizeof buf, "n,mean_degree,max_degree,clustering\n%d,%.10g,%d,%.10g\n", s.n,
                  s.mean_degree, s.max_degree, s.clustering);
    if (out_path.empty()) {
        std::cout << buf;
    } else {
        auto out = open_output(out_path);
        out << buf;
        out.close();
        cli::write_manifest(out_path, "stats", json{{"graph", ga.path}}, 0, {ga.path});
    }
    return kExitOk;
}

// ---- plot ------------------------------------------------------------------

int run_plot(const std::string& input, const std::string& out_path, const std::string& title) {
    std::ifstream in(input);
    if (!in) throw parse_error("cannot open results file: " + input);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty results file: " + input);
    std::vector<cli::PlotSeries> series;
    auto series_for = [&](const std::string& label) -> cli::PlotSeries& {
        for (auto& s : series)
            if (s.label == label) return s;
        series.push_back({label, {}, {}, {}});
        return series.back();
    };
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() < 4)
            throw parse_error(input + " line " + std::to_string(line_no) + ": expected "
                              "method,k,mean_rank,stderr[,mean_ms]");
        if (fields[2] == "nan") continue;  // skipped point
        auto& s = series_for(fields[0]);
        s.x.push_back(std::stod(fields[1]));
        s.y.push_back(std::stod(fields[2]));
        s.yerr.push_back(std::stod(fields[3]));
    }
    auto out = open_output(out_path);
    out << cli::render_line_chart(series, title, "infection size |O|", "mean normalized rank");
    out.close();
    cli::write_manifest(out_path, "plot", json{{"input", input}, {"title", title}}, 0, {input});
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"epidemic source inference from infection snapshots"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write a synthetic network as an edge list");
    generate->add_option("--type", gen.type, "regular-tree | random-tree | dcsbm")->required();
    generate->add_option("--out", gen.out, "output edge-list path")->required();
    generate->add_option("--degree", gen.degree, "regular-tree branching degree");
    generate->add_option("--depth", gen.depth, "regular-tree depth");
    generate->add_option("--nodes", gen.nodes, "node count");
    generate->add_option("--communities", gen.sbm.communities, "dcsbm community count");
    generate->add_option("--p-in", gen.sbm.p_in, "dcsbm within-community probability");
    generate->add_option("--p-out", gen.sbm.p_out, "dcsbm cross-community probability");
    generate->add_option("--pareto-alpha", gen.sbm.pareto_alpha, "dcsbm degree tail exponent");
    generate->add_option("--pareto-threshold", gen.sbm.pareto_threshold, "dcsbm degree scale");
    generate->add_option("--mean-degree", gen.sbm.target_mean_degree, "dcsbm target mean degree");
    generate->add_flag("--unit-theta", gen.sbm.unit_theta, "force all degree propensities to 1");
    generate->add_flag("--lcc", gen.sbm.largest_component, "keep only the largest component");
    generate->add_option("--seed", gen.seed, "RNG seed");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "run an SI epidemic and write the trace");
    simulate->add_option("--graph", sim.graph.path, "edge-list file")->required();
    simulate->add_flag("--one-based", sim.graph.one_based, "input node ids start at 1");
    simulate->add_flag("--compact-labels", sim.graph.compact_labels,
                       "remap arbitrary labels to a dense range");
    simulate->add_option("--source", sim.sources, "source node (repeatable)")->required();
    simulate->add_option("--size", sim.size, "stop at this many infected nodes");
    simulate->add_option("--time", sim.time, "stop at this time horizon");
    simulate->add_option("--beta", sim.beta, "infection rate (timed mode)");
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--out", sim.out, "trace CSV path")->required();

    InferArgs inf;
    auto* infer = app.add_subcommand("infer", "rank candidate sources of a snapshot");
    infer->add_option("--method", inf.method,
                      "bayes | bayes-dist | multi | ge | mfa | rc | jc | dc | random")
        ->required();
    infer->add_option("--graph", inf.graph.path, "edge-list file")->required();
    infer->add_flag("--one-based", inf.graph.one_based, "input node ids start at 1");
    infer->add_flag("--compact-labels", inf.graph.compact_labels,
                    "remap arbitrary labels to a dense range");
    infer->add_option("--snapshot", inf.snapshot_path, "snapshot file, one node per line")
        ->required();
    infer->add_option("--sources", inf.sources, "source count for --method multi");
    infer->add_option("--bayes-cap", inf.bayes_cap, "snapshot size limit for exact methods");
    infer->add_option("--seed", inf.seed, "RNG seed (random method)");
    infer->add_option("--out", inf.out, "ranking CSV path (default: stdout)");
    infer->add_option("--log", inf.elim_log, "write the ge elimination log CSV here");
    infer->add_option("--dump-system", inf.dump_system,
                      "write the mfa system (<prefix>.S.csv, <prefix>.z.csv)");

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Monte-Carlo rank/runtime comparison");
    evaluate->add_option("--config", ev.config_path, "experiment config JSON");
    evaluate->add_option("--out", ev.out_dir, "output directory")->required();
    evaluate->add_option("--graph", ev.graph_file, "override: edge-list file");
    evaluate->add_flag("--one-based", ev.one_based, "input node ids start at 1");
    evaluate->add_option("--generator", ev.generator_json, "override: generator JSON");
    evaluate->add_option("--methods", ev.methods_csv, "override: comma-separated methods");
    evaluate->add_option("--sizes", ev.sizes_csv, "override: comma-separated infection sizes");
    evaluate->add_option("--replicates", ev.replicates, "override: replicates per size");
    evaluate->add_option("--seed", ev.seed, "override: RNG seed");
    evaluate->add_option("--normalize", ev.normalize, "override: snapshot | network");
    evaluate->add_option("--bayes-cap", ev.bayes_cap, "override: bayes size cap");
    evaluate->add_option("--threads", ev.threads, "override: worker threads (0 = auto)");
    evaluate->add_flag("--no-timing", ev.no_timing,
                       "write 0 for mean_ms so equal-seed runs are byte-identical");

    GraphArgs stats_args;
    std::string stats_out;
    auto* stats = app.add_subcommand("stats", "print n, mean/max degree, clustering");
    stats->add_option("--graph", stats_args.path, "edge-list file")->required();
    stats->add_flag("--one-based", stats_args.one_based, "input node ids start at 1");
    stats->add_flag("--compact-labels", stats_args.compact_labels,
                    "remap arbitrary labels to a dense range");
    stats->add_option("--out", stats_out, "stats CSV path (default: stdout)");

    std::string plot_in, plot_out, plot_title = "mean normalized rank vs infection size";
    auto* plot = app.add_subcommand("plot", "render a results CSV as an SVG line chart");
    plot->add_option("--input", plot_in, "results.csv from evaluate")->required();
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->add_option("--title", plot_title, "chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        if (simulate->parsed()) return run_simulate(sim);
        if (infer->parsed()) return run_infer(inf);
        if (evaluate->parsed()) return run_evaluate(ev);
        if (stats->parsed()) return run_stats(stats_args, stats_out);
        if (plot->parsed()) return run_plot(plot_in, plot_out, plot_title);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const infeasible_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitUsage;
}

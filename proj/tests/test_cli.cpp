#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Drives the installed binary end to end. The path is injected by CMake.
#ifndef EPISOURCE_CLI_PATH
#error "EPISOURCE_CLI_PATH must be defined"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    const fs::path tmp = fs::temp_directory_path() / "episource_cli_out.txt";
    const std::string cmd = std::string(EPISOURCE_CLI_PATH) + " " + args + " > " +
                            tmp.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(raw), ss.str()};
}

fs::path sandbox() {
    const fs::path dir = fs::temp_directory_path() / "episource_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("infer ge on the path snapshot ranks node 0 first") {
    auto dir = sandbox();
    write_file(dir / "p4.edges", "0 1\n1 2\n2 3\n");
    write_file(dir / "o.txt", "0\n1\n2\n");
    auto r = run("infer --method ge --graph " + (dir / "p4.edges").string() + " --snapshot " +
                 (dir / "o.txt").string());
    CHECK(r.status == 0);
    CHECK(r.out.substr(0, 16) == "node,score,rank\n");
    CHECK(r.out.find("\n0,") == r.out.find('\n'));  // first data row is node 0
}

TEST_CASE("stats reports the triangle clustering coefficient") {
    auto dir = sandbox();
    write_file(dir / "k3.edges", "0 1\n0 2\n1 2\n");
    auto r = run("stats --graph " + (dir / "k3.edges").string());
    CHECK(r.status == 0);
    CHECK(r.out == "n,mean_degree,max_degree,clustering\n3,2,2,1\n");
}

TEST_CASE("exit codes: usage, input, infeasible") {
    auto dir = sandbox();
    write_file(dir / "p4.edges", "0 1\n1 2\n2 3\n");
    write_file(dir / "o.txt", "0\n1\n2\n");

    CHECK(run("evaluate --config " + (dir / "missing.json").string() + " --out " +
              (dir / "evout").string())
              .status == 2);
    CHECK(run("infer --method nope --graph " + (dir / "p4.edges").string() + " --snapshot " +
              (dir / "o.txt").string())
              .status == 1);
    CHECK(run("bogus-subcommand").status == 1);

    // Snapshot above the exact-table cap.
    std::ostringstream edges, snap;
    for (int i = 0; i + 1 < 30; ++i) edges << i << ' ' << i + 1 << '\n';
    for (int i = 0; i < 30; ++i) snap << i << '\n';
    write_file(dir / "p30.edges", edges.str());
    write_file(dir / "o30.txt", snap.str());
    CHECK(run("infer --method bayes --graph " + (dir / "p30.edges").string() + " --snapshot " +
              (dir / "o30.txt").string())
              .status == 3);
}

TEST_CASE("generate, simulate and infer compose; outputs carry manifests") {
    auto dir = sandbox();
    const auto tree = dir / "tree.edges";
    auto g = run("generate --type random-tree --nodes 40 --seed 5 --out " + tree.string());
    CHECK(g.status == 0);
    CHECK(fs::exists(tree));
    CHECK(fs::exists(dir / "tree.edges.json"));
    CHECK(fs::exists(dir / "manifest.json"));

    const auto trace = dir / "trace.csv";
    auto s = run("simulate --graph " + tree.string() + " --source 0 --size 8 --seed 3 --out " +
                 trace.string());
    CHECK(s.status == 0);
    const std::string body = slurp(trace);
    CHECK(body.substr(0, 10) == "step,node\n");
    CHECK(std::count(body.begin(), body.end(), '\n') == 9);  // header + 8 rows

    // Identical invocations are byte-identical.
    const auto trace2 = dir / "trace2.csv";
    run("simulate --graph " + tree.string() + " --source 0 --size 8 --seed 3 --out " +
        trace2.string());
    CHECK(slurp(trace2) == body);

    // Snapshot = trace nodes; infer accepts it.
    std::ostringstream snap;
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) snap << line.substr(line.find(',') + 1) << '\n';
    write_file(dir / "snap.txt", snap.str());
    auto inf = run("infer --method rc --graph " + tree.string() + " --snapshot " +
                   (dir / "snap.txt").string() + " --out " + (dir / "ranking.csv").string());
    CHECK(inf.status == 0);
    CHECK(slurp(dir / "ranking.csv").substr(0, 16) == "node,score,rank\n");
}

TEST_CASE("timed simulation emits a time column") {
    auto dir = sandbox();
    write_file(dir / "p2.edges", "0 1\n");
    auto r = run("simulate --graph " + (dir / "p2.edges").string() +
                 " --source 0 --time 100 --beta 2 --seed 1 --out " + (dir / "tt.csv").string());
    CHECK(r.status == 0);
    CHECK(slurp(dir / "tt.csv").substr(0, 15) == "step,node,time\n");
}

TEST_CASE("evaluate writes results, metadata and manifest; plot renders them") {
    auto dir = sandbox();
    const auto cfg = dir / "cfg.json";
    write_file(cfg, R"({
      "graph": {"generator": {"type": "random-tree", "nodes": 60, "seed": 2}},
      "methods": ["ge", "dc", "random"],
      "sizes": [4, 6],
      "replicates": 12,
      "seed": 7,
      "timing": false
    })");
    const auto outdir = dir / "run1";
    auto r = run("evaluate --config " + cfg.string() + " --out " + outdir.string());
    CHECK(r.status == 0);
    const std::string csv = slurp(outdir / "results.csv");
    CHECK(csv.substr(0, 31) == "method,k,mean_rank,stderr,mean_");
    CHECK(csv.find("ge,4,") != std::string::npos);
    CHECK(csv.find("random,6,") != std::string::npos);
    CHECK(fs::exists(outdir / "metadata.json"));
    CHECK(fs::exists(outdir / "manifest.json"));

    // Determinism across runs with timing disabled.
    const auto outdir2 = dir / "run2";
    run("evaluate --config " + cfg.string() + " --out " + outdir2.string());
    CHECK(slurp(outdir2 / "results.csv") == csv);

    // Flag overrides change the config (here: replicates).
    const auto outdir3 = dir / "run3";
    auto r3 = run("evaluate --config " + cfg.string() + " --replicates 6 --out " +
                  outdir3.string());
    CHECK(r3.status == 0);
    CHECK(slurp(outdir3 / "results.csv") != csv);

    auto p = run("plot --input " + (outdir / "results.csv").string() + " --out " +
                 (dir / "chart.svg").string());
    CHECK(p.status == 0);
    const std::string svg = slurp(dir / "chart.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("ge") != std::string::npos);
}

TEST_CASE("one-based inputs and label compaction") {
    auto dir = sandbox();
    write_file(dir / "p4_1based.edges", "1 2\n2 3\n3 4\n");
    write_file(dir / "o_1based.txt", "1\n2\n3\n");
    auto r = run("infer --method ge --one-based --graph " + (dir / "p4_1based.edges").string() +
                 " --snapshot " + (dir / "o_1based.txt").string());
    CHECK(r.status == 0);
    // Output is reported in the original labels.
    CHECK(r.out.find("\n1,") == r.out.find('\n'));

    write_file(dir / "sparse.edges", "10 20\n20 30\n30 40\n");
    write_file(dir / "sparse_o.txt", "10\n20\n30\n");
    auto c = run("infer --method ge --compact-labels --graph " + (dir / "sparse.edges").string() +
                 " --snapshot " + (dir / "sparse_o.txt").string() + " --out " +
                 (dir / "sparse_rank.csv").string());
    CHECK(c.status == 0);
    CHECK(slurp(dir / "sparse_rank.csv").find("\n10,") != std::string::npos);
    // Compaction leaves a label sidecar next to the output.
    const std::string sidecar = slurp(dir / "sparse_rank.csv.labels.tsv");
    CHECK(sidecar.find("0\t10") != std::string::npos);
    CHECK(sidecar.find("3\t40") != std::string::npos);
}

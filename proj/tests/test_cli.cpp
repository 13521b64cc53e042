#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <graphlim/graph.hpp>

// End-to-end checks of the installed command-line surface. The binary path
// arrives through the GRAPHLIM_CLI environment variable set by CTest.

namespace {

std::string cli_path() {
    const char* env = std::getenv("GRAPHLIM_CLI");
    REQUIRE_MESSAGE(env != nullptr, "GRAPHLIM_CLI must point at the CLI binary");
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_test_stdout.tmp";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2> cli_test_err.tmp";
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    res.out = buf.str();
    return res;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("generate/parse round trip is canonical") {
    auto gen = run("generate --gnp 50 0.5 --seed 7 --out cli_g.txt");
    REQUIRE(gen.exit_code == 0);
    std::ifstream in("cli_g.txt", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const graphlim::Graph g = graphlim::parse_graph(buf.str());
    CHECK(graphlim::to_edge_list(g) == buf.str());
    CHECK(g.edges() == graphlim::gen_gnp(50, 0.5, 7).edges());
}

TEST_CASE("count subcommand") {
    write_file("cli_k3.txt", "3\n0 1\n0 2\n1 2\n");
    auto res = run("count --graph cli_k3.txt --pattern P3");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "6\n");
    auto induced = run("count --graph cli_k3.txt --pattern P3 --induced");
    CHECK(induced.out == "0\n");
}

TEST_CASE("hf subcommand reports the P3 counterexample root") {
    write_file("cli_p3.txt", "3\n0 1\n1 2\n");
    auto res = run("hf --pattern cli_p3.txt --p 0.7 --tol 1e-9");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("counterexample") != std::string::npos);
    CHECK(res.out.find("0.572727") != std::string::npos);
    auto named = run("hf --pattern P3 --p 0.7 --tol 1e-9 --json");
    CHECK(named.out.find("\"status\":\"counterexample\"") != std::string::npos);
    CHECK(named.out.find("\"schema\":\"graphlim.cli/1\"") != std::string::npos);
    CHECK(named.out.find("\"config\"") != std::string::npos);
}

TEST_CASE("qr cut with gamma 1/2 carries the annotation") {
    auto gen = run("generate --gnp 24 0.5 --seed 3 --out cli_q.txt");
    REQUIRE(gen.exit_code == 0);
    auto res = run("qr --graph cli_q.txt --property cut --p 0.5 --gamma 0.5 --json");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("gamma=1/2: not forcing without regularity") != std::string::npos);
    CHECK(res.out.find("\"property\":\"cut-fixed-size\"") != std::string::npos);
}

TEST_CASE("identical argv gives byte-identical json") {
    auto a = run("qr --graph cli_q.txt --property hereditary-single --pattern C4 --p 0.5 "
                 "--samples 50 --seed 11 --json");
    auto b = run("qr --graph cli_q.txt --property hereditary-single --pattern C4 --p 0.5 "
                 "--samples 50 --seed 11 --json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("density, cutnorm and converge run end to end") {
    write_file("cli_kernel.json",
               R"({"weights":[0.5,0.5],"values":[[0,0.5],[0.5,1]],"range":"graphon"})");
    auto dens = run("density --pattern K2 --kernel cli_kernel.json");
    CHECK(dens.exit_code == 0);
    CHECK(dens.out.find("0.5") != std::string::npos);

    auto cn = run("cutnorm --kernel cli_kernel.json --minus-constant 0.5 --json");
    CHECK(cn.exit_code == 0);
    CHECK(cn.out.find("0.125") != std::string::npos);

    auto gen = run("generate --bipartite 4 4 --out cli_b.txt");
    REQUIRE(gen.exit_code == 0);
    auto conv = run("converge --graph cli_b.txt --graph cli_q.txt --pattern K2 --pattern C4 "
                    "--constant 0.5");
    CHECK(conv.exit_code == 0);
    CHECK(conv.out.find("n,pattern,deviation") == 0);

    auto deg = run("degree --graph cli_b.txt --kmax 3");
    CHECK(deg.exit_code == 0);
    CHECK(deg.out.find("k=1") != std::string::npos);

    auto dist = run("cutdist --graph cli_b.txt --graph2 cli_b.txt --json");
    CHECK(dist.exit_code == 0);
    CHECK(dist.out.find("permutation-upper-bound") != std::string::npos);

    auto moments = run("qr --graph cli_b.txt --property degree-moment --kmax 3 --json");
    CHECK(moments.exit_code == 0);
    CHECK(moments.out.find("\"property\":\"degree-moment\"") != std::string::npos);

    std::remove("cli_boxes.json");
    auto boxed = run("boxint --pattern K2 --kernel cli_kernel.json --boxes cli_boxes.json");
    CHECK(boxed.exit_code == 1); // missing boxes file reports a runtime error
    write_file("cli_boxes.json", "[[1.0,0.0],[0.0,1.0]]");
    boxed = run("boxint --pattern K2 --kernel cli_kernel.json --boxes cli_boxes.json");
    CHECK(boxed.exit_code == 0);
    CHECK(boxed.out == "0.125\n");
}

TEST_CASE("qr csv output and density from a graph") {
    auto csv = run("qr --graph cli_q.txt --property regularity --p 0.5 --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("property,pattern,p,gamma,induced,samples,exhaustive,max_dev,seed") == 0);
    CHECK(csv.out.find("regularity") != std::string::npos);

    write_file("cli_k2.txt", "2\n0 1\n");
    auto dens = run("density --pattern C4 --graph cli_k2.txt");
    CHECK(dens.exit_code == 0);
    CHECK(dens.out == "0.125\n");

    auto conv = run("converge --graph cli_k2.txt --pattern K2 --constant 0.5 --json");
    CHECK(conv.exit_code == 0);
    CHECK(conv.out.find("\"rows\"") != std::string::npos);
}

TEST_CASE("generate from a sampled kernel") {
    auto gen = run("generate --sample-kernel cli_kernel.json --n 40 --seed 5 --out cli_s.txt");
    REQUIRE(gen.exit_code == 0);
    std::ifstream in("cli_s.txt", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const graphlim::Graph g = graphlim::parse_graph(buf.str());
    CHECK(g.n() == 40);
    // Part 2 of this kernel is complete within itself, part 1 empty: the
    // sample is deterministic in the seed.
    auto again = run("generate --sample-kernel cli_kernel.json --n 40 --seed 5");
    CHECK(again.out == buf.str());
}

TEST_CASE("twotype subcommand") {
    auto found = run("twotype --pattern P3 --p 0.7 --induced --symmetrized --tol 1e-9");
    CHECK(found.exit_code == 0);
    CHECK(found.out.find("witness") != std::string::npos);
    auto none = run("twotype --pattern K2 --alpha 0.5 --grid 41");
    CHECK(none.exit_code == 0);
    CHECK(none.out == "none\n");
}

TEST_CASE("exit codes") {
    CHECK(run("count --graph cli_k3.txt").exit_code == 2);         // missing --pattern
    CHECK(run("nonsense").exit_code == 2);                         // unknown subcommand
    CHECK(run("count --graph no_such.txt --pattern K2").exit_code == 1);
    CHECK(run("hf --pattern P3 --p 1.5").exit_code == 2);          // range-checked flag
    write_file("cli_bad.txt", "2\n0 0\n");
    CHECK(run("count --graph cli_bad.txt --pattern K2").exit_code == 1);
    CHECK(run("--help").exit_code == 0);
}

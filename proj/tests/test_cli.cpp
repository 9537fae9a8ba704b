// End-to-end tests against the built binary (path in DISTMAGIC_BIN).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "distmagic/distmagic.hpp"
#include "fixtures.hpp"

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string binary() {
    const char* bin = std::getenv("DISTMAGIC_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

CmdResult run(const std::string& args) {
    const std::string err_path = "cli_stderr.tmp";
    const std::string cmd = args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_path);
    std::stringstream ss;
    ss << err.rdbuf();
    r.err = ss.str();
    return r;
}

CmdResult run_tool(const std::string& args) { return run(binary() + " " + args); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("cli: search first witness") {
    const CmdResult r = run_tool("search 7 7 --first");
    CHECK(r.code == 0);
    CHECK(r.out == distmagic::to_graph6(fixtures::branch_7_7()) + "\n");
    const auto stats = nlohmann::json::parse(lines_of(r.err).at(0));
    CHECK(stats["witnesses"] == 1);
    CHECK(stats.contains("nodes"));
    CHECK(stats.contains("prunes_symmetry"));
    CHECK(stats.contains("prunes_weight"));
}

TEST_CASE("cli: search exhaustion and bound precheck") {
    const CmdResult none = run_tool("search 10 16 --first");
    CHECK(none.code == 1);
    CHECK(none.err.find("none exists (exhaustive)") != std::string::npos);

    const CmdResult bound = run_tool("search 4 100 --first");
    CHECK(bound.code == 1);
}

TEST_CASE("cli: search budget exit code") {
    const CmdResult r = run_tool("search 13 28 --first --budget 1");
    CHECK(r.code == 2);
    CHECK(r.err.find("budget exhausted") != std::string::npos);
}

TEST_CASE("cli: search --all emits verified graphs") {
    const CmdResult r = run_tool("search 7 7 --all");
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE_FALSE(lines.empty());
    for (const auto& line : lines)
        CHECK(distmagic::verify_identity_magic(distmagic::from_graph6(line)) == 7);
}

TEST_CASE("cli: regular search") {
    const CmdResult r = run_tool("search 17 36 --regular 4");
    CHECK(r.code == 0);
    const distmagic::Graph g = distmagic::from_graph6(lines_of(r.out).at(0));
    CHECK(distmagic::verify_identity_magic(g) == 36);

    CHECK(run_tool("search 9 20 --regular 4").code == 1);
    CHECK(run_tool("search 9 20 --regular 4 --all").code == 64);
}

TEST_CASE("cli: enumerate catalog") {
    const CmdResult r = run_tool("enumerate 7");
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.size() == 3);
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    const auto summary = nlohmann::json::parse(lines_of(r.err).at(0));
    CHECK(summary["n"] == 7);
    CHECK(summary["total_classes"] == 3);
    CHECK(summary["per_k"]["7"] == 1);

    const CmdResult clipped = run_tool("enumerate 7 --kmin 7 --kmax 7");
    CHECK(lines_of(clipped.out).size() == 1);

    const CmdResult as_json = run_tool("enumerate 7 --format json");
    const auto reps = lines_of(as_json.out);
    CHECK(reps.size() == 3);
    for (const auto& line : reps) {
        const distmagic::Graph g = distmagic::from_adjacency_json(line);
        CHECK(g.order() == 7);
    }
}

TEST_CASE("cli: enumerate matches the published census at other orders") {
    const CmdResult three = run_tool("enumerate 3");
    CHECK(lines_of(three.out).size() == 1);
    CHECK(nlohmann::json::parse(lines_of(three.err).at(0))["total_classes"] == 1);
    const CmdResult nine = run_tool("enumerate 9");
    CHECK(nlohmann::json::parse(lines_of(nine.err).at(0))["total_classes"] == 5);
}

TEST_CASE("cli: budgeted enumeration exits 2") {
    const CmdResult r = run_tool("search 11 30 --all --budget 50");
    CHECK(r.code == 2);
}

TEST_CASE("cli: classify beyond the search capacity is verdict-only") {
    const CmdResult r = run_tool("classify 132");
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.size() == 1);  // no witness graph follows
    CHECK(lines.at(0).find("magic") == 0);
}

TEST_CASE("cli: enumerate output is independent of the worker count") {
    const CmdResult one = run_tool("enumerate 8 --jobs 1");
    const CmdResult two = run_tool("enumerate 8 --jobs 2");
    CHECK(one.code == 0);
    CHECK(one.out == two.out);
    const CmdResult env = run("DISTMAGIC_JOBS=2 " + binary() + " enumerate 8");
    CHECK(env.out == one.out);
}

TEST_CASE("cli: classify") {
    const CmdResult no = run_tool("classify 12");
    CHECK(no.code == 1);
    CHECK(lines_of(no.out).at(0) == "not-magic");

    const CmdResult c42 = run_tool("classify 42");
    CHECK(c42.code == 0);
    const auto lines = lines_of(c42.out);
    CHECK(lines.at(0) == "magic, family 4t2, t=10");
    CHECK(distmagic::verify_identity_magic(distmagic::from_graph6(lines.at(1))) == 42);

    const CmdResult c27 = run_tool("classify 27");
    CHECK(lines_of(c27.out).at(0) == "magic, family p3tc4, t=6");

    const CmdResult c24 = run_tool("classify 24");
    CHECK(lines_of(c24.out).at(0) == "magic, search witness at n=8");
    CHECK(distmagic::verify_identity_magic(
              distmagic::from_graph6(lines_of(c24.out).at(1))) == 24);

    const CmdResult bare = run_tool("classify 42 --no-witness");
    CHECK(lines_of(bare.out).size() == 1);
}

TEST_CASE("cli: construct piped into verify") {
    const std::string bin = binary();
    const std::vector<std::pair<std::string, long long>> cases = {
        {"tc4 3", 13},       {"tc4 1", 5},        {"p3tc4 2", 11}, {"p3tc4 0", 3},
        {"4t2 3", 14},       {"4t2 10", 42},      {"primepower 3 3", 27},
        {"primepower 5 2", 25}, {"primepower 7 1", 7},
    };
    for (const auto& [args, k] : cases) {
        const CmdResult r = run(bin + " construct " + args + " | " + bin + " verify");
        CHECK(r.code == 0);
        CHECK(lines_of(r.out).at(0) == std::to_string(k));
    }
}

TEST_CASE("cli: construct blowup from a base graph file") {
    const std::string bin = binary();
    CHECK(run_tool("construct circulant 3 1 --output c3.g6.tmp").code == 0);
    const CmdResult r =
        run(bin + " construct blowup 2 --base c3.g6.tmp | " + bin + " verify");
    CHECK(r.code == 0);
    CHECK(lines_of(r.out).at(0) == "14");
}

TEST_CASE("cli: verify failure reports the offending vertex") {
    const CmdResult r = run("echo 'A_' | " + binary() + " verify");
    CHECK(r.code == 1);
    CHECK(r.err.find("vertex 2 has weight 1") != std::string::npos);

    // circulant C6 is a graph but not identity-magic
    const CmdResult c6 = run(binary() + " construct circulant 6 1 | " + binary() + " verify");
    CHECK(c6.code == 1);
    CHECK(c6.err.find("vertex") != std::string::npos);

    const CmdResult bad = run("echo 'A~' | " + binary() + " verify");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("invalid input") != std::string::npos);
}

TEST_CASE("cli: verify json input") {
    const std::string path = "w.json.tmp";
    {
        std::ofstream f(path);
        f << distmagic::to_adjacency_json(fixtures::three_c4());
    }
    const CmdResult r = run_tool("verify " + path);
    CHECK(r.code == 0);
    CHECK(lines_of(r.out).at(0) == "13");
    const CmdResult explicit_fmt = run_tool("verify " + path + " --format json");
    CHECK(explicit_fmt.code == 0);
}

TEST_CASE("cli: dot output") {
    const CmdResult r = run_tool("construct tc4 1 --format dot");
    CHECK(r.code == 0);
    CHECK(r.out.find("graph G {") == 0);
    CHECK(r.out.find("--") != std::string::npos);
}

TEST_CASE("cli: output file option") {
    const CmdResult r = run_tool("search 7 7 --first --output w.g6.tmp");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f("w.g6.tmp");
    std::string line;
    REQUIRE(std::getline(f, line));
    CHECK(line == distmagic::to_graph6(fixtures::branch_7_7()));
}

TEST_CASE("cli: usage errors exit 64") {
    CHECK(run_tool("search 7").code == 64);
    CHECK(run_tool("search 7 7 --bogus").code == 64);
    CHECK(run_tool("construct tc4").code == 64);
    CHECK(run_tool("construct nosuchfamily 3").code == 64);
    CHECK(run_tool("construct tc4 0").code == 64);
    CHECK(run_tool("nosuchcommand").code == 64);
    CHECK(run_tool("search 7 7 --first --all").code == 64);
}

// End-to-end tests for the command-line tool.  The binary under test is named
// by the HYPENNY_BIN environment variable (set by the test registration), and
// every invocation here goes through the real argv/exit-code path.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int rc = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("HYPENNY_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "HYPENNY_BIN must point at the CLI binary");
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

size_t count_of(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("table subcommand: csv shape, blank cells, pinned values") {
    RunResult r = run_cli("table1");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "k,alpha_dk,dk,alpha_dbark,dbark\n"));
    CHECK(contains(r.out, "6,---,---,"));             // no triangular length at order 6
    CHECK(contains(r.out, "1.0905496635070859"));     // first triangular length
    CHECK(contains(r.out, "0.76217325482093434"));    // first semiregular length
    CHECK(count_of(r.out, "\n") == 19);               // header + rows 6..23
}

TEST_CASE("table subcommand: json uses nulls where csv uses dashes") {
    RunResult r = run_cli("table1 --format json");
    CHECK(r.rc == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 18);
    CHECK(doc[0]["k"] == 6);
    CHECK(doc[0]["alpha_dk"].is_null());
    CHECK(doc[0]["dk"].is_null());
    CHECK(doc[1]["k"] == 7);
    CHECK(doc[1]["dk"].get<double>() == doctest::Approx(1.0905496635070859).epsilon(1e-15));
}

TEST_CASE("curves subcommand: header, critical-length markers, envelope column") {
    RunResult r = run_cli("curves --steps 40 --d-min 0.2 --d-max 2.0");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "d,gamma1,gamma2,gamma3,gamma4,gamma5,gamma6,is_dk,is_dbark,upper_env\n"));
    CHECK(contains(r.out, "2.3969826573861"));  // semiregular area bound at its length
    CHECK(contains(r.out, "2.3819660112501"));  // universal bound at the order-7 length
    CHECK(contains(r.out, ",1,0,"));            // a triangular marker row
    CHECK(contains(r.out, ",0,1,"));            // a semiregular marker row
}

TEST_CASE("curves subcommand: svg output is a complete chart") {
    RunResult r = run_cli("curves --steps 64 --format svg -o cli_curves.svg");
    CHECK(r.rc == 0);
    const std::string svg = slurp("cli_curves.svg");
    CHECK(contains(svg, "<?xml"));
    CHECK(contains(svg, "<svg"));
    CHECK(contains(svg, "</svg>"));
    CHECK(count_of(svg, "<path") >= 3);  // one polyline per plotted bound family
    std::remove("cli_curves.svg");
}

TEST_CASE("verify subcommand reports a clean sweep") {
    RunResult r = run_cli("verify 100000");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "OK: no counterexample"));
    CHECK(contains(r.out, "100000"));
}

TEST_CASE("sequence subcommand emits the edge-count profile") {
    RunResult r = run_cli("sequence 12");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "n,increment,max_edges\n"));
    CHECK(contains(r.out, "\n12,"));
}

TEST_CASE("spiral subcommand prints the closed-form count") {
    RunResult r = run_cli("spiral 3 7 17");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "n = 17"));
    CHECK(contains(r.out, "e = 34"));
}

TEST_CASE("oracle subcommand prints the exhaustive maximum") {
    RunResult r = run_cli("oracle 3 7 6");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "9"));
}

TEST_CASE("embed subcommand: metrics on stdout, drawing into the output file") {
    RunResult r = run_cli("embed 3 7 12 -o cli_embed.svg");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "n = 12"));
    CHECK(contains(r.out, "oler_slack = 0"));
    const std::string svg = slurp("cli_embed.svg");
    CHECK(contains(svg, "<svg"));
    CHECK(count_of(svg, "<circle") >= 13);  // boundary circle + one disc per vertex
    std::remove("cli_embed.svg");
}

TEST_CASE("construct subcommand: counts, certificate, and json round-trip") {
    RunResult r = run_cli("construct 1.0 2 -o cli_construct.json");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "q = 7"));
    CHECK(contains(r.out, "n = 34"));
    CHECK(contains(r.out, "e = 67"));
    CHECK(contains(r.out, "min_pair_slack = 0.25"));
    const auto doc = nlohmann::json::parse(slurp("cli_construct.json"));
    CHECK(doc["n"] == 34);
    CHECK(doc["points"].size() == 34);
    CHECK(doc["edges"].size() == 67);
    CHECK(doc["certificate"]["pair_checks"] == 34 * 33 / 2);
    std::remove("cli_construct.json");
}

TEST_CASE("horocycles subcommand: counts and svg circles") {
    RunResult r = run_cli("horocycles 9 -o cli_horo.svg");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "circles = 9"));
    CHECK(contains(r.out, "tangencies = 15"));
    const std::string svg = slurp("cli_horo.svg");
    CHECK(count_of(svg, "<circle") == 10);  // nine packed circles + the boundary
    std::remove("cli_horo.svg");
}

TEST_CASE("thresholds subcommand prints the pinned constants") {
    RunResult r = run_cli("thresholds");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "generic_bounds_crossing = 1.1128036956703"));
    CHECK(contains(r.out, "order7_dominance_threshold = 0.66113808717105"));
    CHECK(contains(r.out, "dbar_6 = 0.76217325482093"));
    CHECK(contains(r.out, "d_7 = 1.0905496635070859"));
}

TEST_CASE("repeated runs are byte-identical") {
    RunResult a = run_cli("construct 1.0 2 --format json");
    RunResult b = run_cli("construct 1.0 2 --format json");
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    RunResult c = run_cli("horocycles 24 --format svg");
    RunResult d2 = run_cli("horocycles 24 --format svg");
    CHECK(c.rc == 0);
    CHECK(c.out == d2.out);
}

TEST_CASE("invalid arguments exit with the usage code") {
    CHECK(run_cli("spiral 4 7 10").rc == 2);    // unsupported tessellation family
    CHECK(run_cli("spiral 3 6 10").rc == 2);    // not a hyperbolic order
    CHECK(run_cli("construct -1 1").rc == 2);   // side length must be positive
    CHECK(run_cli("embed 3 7 0").rc == 2);      // need at least one vertex
    CHECK(run_cli("curves --steps 1").rc == 2); // degenerate grid
    CHECK(run_cli("nonsense").rc == 2);         // unknown subcommand
    CHECK(run_cli("").rc == 2);                 // a subcommand is required
}

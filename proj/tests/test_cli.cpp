// Exercises the installed CLI binary end to end: verdict JSON, scan output
// determinism, exit codes.  argv[1] is the path to the binary.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_out.txt";
    const std::string cmd = g_binary + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    std::remove(out_path.c_str());
    return r;
}

} // namespace

TEST_CASE("classify emits verdict JSON with citation") {
    RunResult r = run("classify --d 2 --p 2 --q 2 --r 1 --op global");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"status\": \"Bounded\"") != std::string::npos);
    CHECK(r.output.find("citation") != std::string::npos);

    r = run("classify --d 2 --p 1 --q inf --r 1 --op global");
    CHECK(r.output.find("\"Unbounded\"") != std::string::npos);

    r = run("classify --d 2 --p 2 --q 2 --op alpha-star");
    CHECK(r.output.find("\"value\": 1.0") != std::string::npos);
}

TEST_CASE("invalid configuration exits 2") {
    RunResult r = run("classify --op bogus");
    CHECK(r.exit_code == 2);
    r = run("nonsense-subcommand");
    CHECK(r.exit_code == 2);
}

TEST_CASE("scan output is byte-identical across runs") {
    const std::string args =
        "--seed 7 --format csv scan --family knapp --n 512 "
        "--deltas 1/16,3/64,1/32";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.rfind("family,", 0) == 0);
    CHECK(a.output.find("knapp") != std::string::npos);
    CHECK(a.output.find("# slope=") != std::string::npos);
}

TEST_CASE("partition subcommand asserts the identity") {
    RunResult r = run("partition --n 16 --delta 1/8 --eps 1/4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("br-reconstruct reports residuals within bounds") {
    RunResult r = run("br-reconstruct --alphas 1,2 --j 8");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("residual_global") != std::string::npos);
}

int main_impl(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-bilab-binary>\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context ctx;
    return ctx.run();
}

int main(int argc, char** argv) { return main_impl(argc, argv); }

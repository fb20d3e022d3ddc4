#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

// Runs the CLI with stderr folded into stdout.
Result cli(const std::string& args) {
    const std::string cmd = std::string(CLAWLAB_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (auto got = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "clawlab_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("run is deterministic given the seed") {
    const auto a = cli("run --n 256 --kappa 0.4 --depth 1 --family random-planted-claw --seed 3 --format json");
    const auto b = cli("run --n 256 --kappa 0.4 --depth 1 --family random-planted-claw --seed 3 --format json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"charged_cost\"") != std::string::npos);
    const auto text = cli("run --n 256 --kappa 0.4 --depth 1 --seed 3");
    CHECK(text.code == 0);
    CHECK(text.out.find("by label:") != std::string::npos);
}

TEST_CASE("no-claw runs always say false") {
    for (int seed = 0; seed < 5; ++seed) {
        const auto r = cli("run --n 512 --kappa 0.5 --depth 2 --family random-no-claw --seed " + std::to_string(seed));
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("decision        false", 0) == 0);
    }
}

TEST_CASE("instance files: gen, run, and malformed input") {
    const auto path = scratch("inst.txt");
    REQUIRE(cli("gen --n 100 --kappa 0.5 --family hard-singleton-yes --seed 2 --out " + path.string()).code == 0);
    const auto r = cli("run --instance " + path.string() + " --depth 1");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("decision        true", 0) == 0);

    const auto bad = scratch("bad.txt");
    std::ofstream(bad) << "3 4\n1 2 3\n1 2 x\n";
    const auto e = cli("run --instance " + bad.string());
    CHECK(e.code == 2);
    CHECK(e.out.find("line 3") != std::string::npos);
}

TEST_CASE("check subcommands") {
    const auto ex = cli("exponents 10 0.001");
    CHECK(ex.code == 0);
    CHECK(ex.out.find("FAIL") == std::string::npos);
    CHECK(cli("exponents 3 1/100").code == 0);
    CHECK(cli("reduce --k-max 5 --m-max 3 --random 500").code == 0);
    const auto conc = cli("concentration --trials 200 --format json");
    CHECK(conc.code == 0);
    CHECK(conc.out.find("event_E3_freq") != std::string::npos);
}

TEST_CASE("reduce can emit an instance") {
    const auto path = scratch("reduced.txt");
    REQUIRE(cli("reduce --emit --n 12 --k 5 --want-claw --seed 4 --out " + path.string()).code == 0);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "12 5");
}

TEST_CASE("sweep then fit") {
    const auto csv = scratch("sweep.csv");
    const auto s = cli("sweep --n 64 128 256 512 --kappa 0.4 --depth 1 --trials 3 --family random-no-claw --out " +
                       csv.string());
    REQUIRE(s.code == 0);
    const auto f = cli("fit " + csv.string() + " --format json");
    CHECK(f.code == 0);
    CHECK(f.out.find("\"slope\"") != std::string::npos);
    // An impossible tolerance is a check failure, not a usage error.
    CHECK(cli("fit " + csv.string() + " --tolerance 0").code == 1);

    const auto few = scratch("few.csv");
    REQUIRE(cli("sweep --n 64 128 --kappa 0.4 --depth 1 --trials 2 --out " + few.string()).code == 0);
    const auto w = cli("fit " + few.string());
    CHECK(w.code == 0);
    CHECK(w.out.find("warning") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("run --format yaml").code == 2);
    CHECK(cli("run --family nope").code == 2);
    CHECK(cli("exponents 3 abc").code == 2);
    CHECK(cli("--help").code == 0);
}

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

const std::string kBin = NEVLAB_BIN;
const std::string kConfigs = NEVLAB_CONFIG_DIR;

} // namespace

TEST_CASE("catalog lists the built-ins and honors filters") {
    const CommandResult all = run_command(kBin + " catalog");
    CHECK(all.exit_code == 0);
    int surfaces = 0, functions = 0;
    bool in_functions = false;
    std::istringstream lines(all.output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line == "functions:") in_functions = true;
        else if (line.rfind("  ", 0) == 0) (in_functions ? functions : surfaces)++;
    }
    CHECK(surfaces >= 3);
    CHECK(functions >= 6);

    const CommandResult none = run_command(kBin + " catalog nothing-matches-this");
    CHECK(none.exit_code == 0);
}

TEST_CASE("run succeeds on the bundled identity config") {
    const CommandResult r = run_command(kBin + " run --config " + kConfigs +
                                        "/identity-plane.cfg --out test-out/cli-identity");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fmt (0): PASS") != std::string::npos);
    CHECK(r.output.find("fmt (inf): PASS") != std::string::npos);
    CHECK(std::filesystem::exists("test-out/cli-identity/report.json"));
    CHECK(std::filesystem::exists("test-out/cli-identity/rows.csv"));
}

TEST_CASE("a config with r0 past the grid exits 1 with a diagnostic") {
    const std::string bad = "test-out/bad.cfg";
    std::filesystem::create_directories("test-out");
    std::ofstream(bad) << "surface = euclidean-plane\nfunction = identity\n"
                          "targets = 0\nr0 = 5\ngrid.min = 2\ngrid.max = 10\n";
    const CommandResult r = run_command(kBin + " run --config " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("r0 must precede grid") != std::string::npos);
}

TEST_CASE("an unreadable config exits 1 naming the file") {
    const CommandResult r = run_command(kBin + " run --config does/not/exist.cfg");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("does/not/exist.cfg") != std::string::npos);
}

TEST_CASE("verify runs a single check from a config") {
    const CommandResult r = run_command(kBin + " verify --check fmt --config " + kConfigs +
                                        "/identity-plane.cfg --out test-out/cli-verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fmt") != std::string::npos);
    CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("the exhausted-disc config classifies as parabolic and passes") {
    const CommandResult r = run_command(kBin + " run --config " + kConfigs +
                                        "/moebius-exhausted-disc.cfg --out test-out/cli-chart");
    CHECK(r.exit_code == 0);
    std::ifstream in("test-out/cli-chart/report.json");
    REQUIRE(in.good());
    std::string report((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(report.find("\"classification\": \"parabolic\"") != std::string::npos);
}

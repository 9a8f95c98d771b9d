#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// end-to-end checks of the installed command-line surface
namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CAPQ_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("report --json is deterministic and carries the kernels") {
    RunResult a = run("report -p 17 -q 7 --json");
    RunResult b = run("report -p 17 -q 7 --json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["input"]["d"] == 238);
    CHECK(j["units"]["eps_2pq"]["x"] == "11663");
    CHECK(j["units"]["eps_2pq"]["square_class"]["root"] == "108");
    CHECK(j["capitulation"]["K1"]["generators"] == nlohmann::json::array({"H1", "H2"}));
    CHECK(j["capitulation"]["K2"]["fixture_resolution"].is_string());
    CHECK(j["oracle"]["kuroda_h_k"] == 16);
    CHECK(j["application"].is_null());  // q = 7 = 3 mod 8 fails
}

TEST_CASE("report rejects non-prime input with exit 2") {
    RunResult r = run("report -p 4 -q 7");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("p is not prime") != std::string::npos);
}

TEST_CASE("report --md includes the application profile when hypotheses hold") {
    RunResult r = run("report -p 17 -q 3 --md");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Application profile") != std::string::npos);
    CHECK(r.out.find("x - 1 = 10^2") != std::string::npos);
}

TEST_CASE("scan output and filters") {
    RunResult r = run("scan --p-max 100 --q-max 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("17,7,238,x+1") != std::string::npos);

    RunResult empty = run("scan --p-max 2 --q-max 2");
    CHECK(empty.exit_code == 0);
    std::istringstream is(empty.out);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 1);  // header only

    RunResult filt = run("scan --p-max 60 --q-max 30 --filter p5mod8");
    CHECK(filt.exit_code == 0);
    std::istringstream fs(filt.out);
    std::getline(fs, line);  // header
    while (std::getline(fs, line)) {
        // every row has am_order = 4 (column 8)
        std::stringstream ss(line);
        std::string tok;
        for (int i = 0; i < 8; ++i) std::getline(ss, tok, ',');
        CHECK(tok == "4");
    }
}

TEST_CASE("verify-fixtures passes on the shipped data") {
    RunResult r = run("verify-fixtures");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0 failed") != std::string::npos);
}

TEST_CASE("verify-fixtures flags a tampered root with exit 3") {
    std::ifstream src(CAPQ_FIXTURES_SRC);
    REQUIRE(src.good());
    std::stringstream content;
    content << src.rdbuf();
    std::string text = content.str();
    auto pos = text.find("238,17,7,x+1,108");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 16, "238,17,7,x+1,109");
    std::string tmp = "/tmp/capq_tampered_fixtures.csv";
    std::ofstream dst(tmp);
    dst << text;
    dst.close();
    RunResult r = run("verify-fixtures --fixtures " + tmp);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(r.out.find("square column root") != std::string::npos);
    std::remove(tmp.c_str());
}

TEST_CASE("witness output") {
    RunResult k1 = run("witness -p 5 -q 3 --field K1");
    CHECK(k1.exit_code == 0);
    CHECK(k1.out.find("1/2 + i + 1/2*sqrt(5)") != std::string::npos);
    CHECK(k1.out.find("(1+2i)*eps_5") != std::string::npos);

    RunResult k3 = run("witness -p 17 -q 7 --field K3");
    CHECK(k3.exit_code == 0);
    CHECK(k3.out.find("1 + 1/2*sqrt(2) + 1/2*sqrt(-2)") != std::string::npos);
    CHECK(k3.out.find("(1+i)*eps_2") != std::string::npos);

    RunResult k2 = run("witness -p 17 -q 7 --field K2");
    CHECK(k2.exit_code == 0);
    CHECK(k2.out.find("no constructive witness in this branch") != std::string::npos);

    RunResult bad = run("witness -p 17 -q 7 --field K9");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("oracle class-group") {
    RunResult neg = run("oracle class-group -m -23");
    CHECK(neg.exit_code == 0);
    CHECK(neg.out.find("h(-23) = 3") != std::string::npos);
    RunResult pos = run("oracle class-group -m 79");
    CHECK(pos.exit_code == 0);
    CHECK(pos.out.find("h(79) = 3") != std::string::npos);
}

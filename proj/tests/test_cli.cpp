#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(STOKES_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    int status = pclose(p);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

RunResult run_stderr(const std::string& args) {
    std::string cmd = std::string(STOKES_CLI_PATH) + " " + args + " 2>&1 1>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    int status = pclose(p);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("analyze: exponential example output") {
    RunResult r = run("analyze --operator \"z^2*d+1\"");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["classification"] == "irregular");
    CHECK(j["formal"]["l"] == 1);
    CHECK(j["formal"]["parts"][0]["coeffs"][0]["re"] == "-1");
    CHECK(j["certificate"]["I"] == nlohmann::json::array({1}));
    CHECK(j["presentation"]["n"] == 1);
    CHECK(j["witness"]["checks"]["in_SS_Fdelta"] == true);
    CHECK(j["witness"]["checks"]["in_Char"] == false);
}

TEST_CASE("analyze: regular operator has no certificate") {
    RunResult r = run("analyze --operator \"z*d+3\"");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["classification"] == "regular");
    CHECK_FALSE(j.contains("certificate"));
    CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("analyze: composed operator") {
    RunResult r = run("analyze --operator \"z^4*d^2+2*z^3*d-1\"");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["formal"]["parts"].size() == 2);
    CHECK(j["formal"]["parts"][0]["coeffs"][0]["re"] == "-1");
    CHECK(j["formal"]["parts"][1]["coeffs"][0]["re"] == "1");
    CHECK(j["presentation"]["n"] == 1);
    CHECK(j["presentation"]["m"] == 2);
}

TEST_CASE("deterministic byte-identical output") {
    RunResult a = run("analyze --operator \"z^4*d^2+2*z^3*d-1\"");
    RunResult b = run("analyze --operator \"z^4*d^2+2*z^3*d-1\"");
    CHECK(a.out == b.out);
    RunResult c = run("certificate --operator \"z^2*d+1\" --r 1/2");
    RunResult d = run("certificate --operator \"z^2*d+1\" --r 1/2");
    CHECK(c.out == d.out);
}

TEST_CASE("exit codes") {
    CHECK(run("analyze --operator \"z^2*d + $\"").exit_code == 1);
    CHECK(run("analyze --operator \"z^4*d^2+2*z^3*d+2*z^2*d+1\"").exit_code == 2);  // (z^2 d+1)^2
    CHECK(run("count --operator \"z^2*d+1\" --region "
              "'{\"sector\":{\"theta0\":{\"pi_mult\":\"0\"},\"theta1\":{\"pi_mult\":\"1/4\"},"
              "\"R\":\"2\"},\"constraints\":[]}'")
              .exit_code == 3);
    CHECK(run("certificate --operator \"z*d+3\"").exit_code == 4);

    // machine-readable error JSON with byte offset on stderr
    RunResult err = run_stderr("analyze --operator \"z^2*d + $\"");
    auto j = nlohmann::json::parse(err.out);
    CHECK(j["error"]["type"] == "SyntaxError");
    CHECK(j["error"]["byte_offset"] == 8);
}

TEST_CASE("count command: reference values") {
    std::string base =
        "'{\"sector\":{\"theta0\":{\"pi_mult\":\"0\"},\"theta1\":{\"pi_mult\":\"1/4\"},\"R\":\"1/"
        "2\"},\"constraints\":[%s]}'";
    RunResult s = run("count --operator \"z^2*d+1\" --region "
                      "'{\"sector\":{\"theta0\":{\"pi_mult\":\"0\"},\"theta1\":{\"pi_mult\":\"1/"
                      "4\"},\"R\":\"1/2\"},\"constraints\":[]}'");
    CHECK(nlohmann::json::parse(s.out)["n"] == 0);
    RunResult sd = run("count --operator \"z^2*d+1\" --region "
                       "'{\"sector\":{\"theta0\":{\"pi_mult\":\"0\"},\"theta1\":{\"pi_mult\":\"1/"
                       "4\"},\"R\":\"1/2\"},\"constraints\":[{\"min_modulus\":\"1/10\"}]}'");
    CHECK(nlohmann::json::parse(sd.out)["n"] == 1);
    (void)base;

    // U_eps region through the CLI
    RunResult u = run("count --operator \"z^2*d+1\" --region "
                      "'{\"sector\":{\"theta0\":{\"pi_mult\":\"0\"},\"theta1\":{\"pi_mult\":\"1/"
                      "4\"},\"R\":\"1/2\"},\"constraints\":[{\"outside_disk\":{\"center_re\":\"1/"
                      "5\",\"center_im\":\"0\",\"radius\":\"1/5\"}}]}'");
    CHECK(nlohmann::json::parse(u.out)["n"] == 1);
}

TEST_CASE("certificate emits both documents and verify accepts bundles") {
    RunResult r = run("certificate --operator \"z^4*d^2+2*z^3*d-1\" --r 1/10");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("certificate"));
    CHECK(j.contains("witness"));
    CHECK(j["witness"]["delta"] == "1/20");
    CHECK(j["certificate"]["R"] == "1");

    RunResult a = run("analyze --operator \"z^4*d^2+2*z^3*d-1\"");
    std::ofstream("/tmp/stokes_cli_bundle.json") << a.out;
    RunResult v = run("verify /tmp/stokes_cli_bundle.json");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("VERIFIED") != std::string::npos);
}

TEST_CASE("system file input") {
    std::ofstream("/tmp/stokes_cli_sys.json") << R"({"N": 2, "A": [["1", "0"], ["z", "-1"]]})";
    RunResult r = run("analyze --system /tmp/stokes_cli_sys.json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["classification"] == "irregular");
    CHECK(j["formal"]["parts"].size() == 2);
}

TEST_CASE("plot emits valid svg") {
    RunResult r = run("plot --operator \"z^2*d+1\" --what sectors --out /tmp/stokes_cli_plot.svg");
    CHECK(r.exit_code == 0);
    std::ifstream in("/tmp/stokes_cli_plot.svg");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    CHECK(content.find("</svg>") != std::string::npos);
}

TEST_CASE("oracle command passes on the exponential example") {
    RunResult r = run("oracle --operator \"z^2*d+1\" --rays 2 --tol 1e-10 --digits 50");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["precision_digits"] == 50);
    CHECK(j["rays"].size() == 2);
}

TEST_CASE("STOKES_GATE_PRECISION overrides the working precision") {
    std::string cmd = std::string("STOKES_GATE_PRECISION=80 ") + STOKES_CLI_PATH +
                      " analyze --operator \"z^2*d+1\" 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    int status = pclose(p);
    CHECK(WEXITSTATUS(status) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["classification"] == "irregular");
}

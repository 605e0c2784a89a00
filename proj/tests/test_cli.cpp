#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef AHLINK_CLI_PATH
#error "AHLINK_CLI_PATH must point at the built binary"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(AHLINK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string tmp(const std::string& name) { return "/tmp/ahlink_cli_" + name; }

} // namespace

TEST_CASE("cli exit codes") {
    CHECK(run("fade-margin --p-out 0.1") == 0);
    CHECK(run("catalog") == 0);
    CHECK(run("range --mds -98") == 0);
    // Config errors.
    CHECK(run("fade-margin --p-out not-a-number") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("rate --distance 10 --target-rate 1") == 2);
    CHECK(run("relay-range --scenario /does/not/exist.cfg") == 2);
    CHECK(run("range --tx martian --mds -98") == 2);
    CHECK(run("range --mcs 9 --bandwidth 2") == 2);  // sensitivity not defined
    CHECK(run("catalog --region Atlantis") == 2);
    // Infeasible scenarios.
    CHECK(run("range --tx st --rx st --deployment pico --mds -20") == 3);
    CHECK(run("relay-range --ap-hop-distance 5000") == 3);
    CHECK(run("rate --target-rate 1e15 --tx st --rx st --deployment pico") == 3);
}

TEST_CASE("cli summary values") {
    const std::string out = tmp("summary.txt");
    REQUIRE(run("-o " + out + " range --mds -98 --fading none") == 0);
    const std::string text = slurp(out);
    const auto pos = text.find("max_range_m=");
    REQUIRE(pos != std::string::npos);
    const double range_m = std::stod(text.substr(pos + 12));
    CHECK(range_m == doctest::Approx(549.0).epsilon(0.01));

    REQUIRE(run("-o " + out + " fade-margin --p-out 0.1") == 0);
    CHECK(slurp(out).find("fm_db=9.77") != std::string::npos);

    REQUIRE(run("-o " + out +
                " relay-rate --ap-hop-distance 850 --mcs 0 --packet-bits 2048"
                " --target-rate 1e5") == 0);
    CHECK(slurp(out).find("st_hop_max_m=42") != std::string::npos);
}

TEST_CASE("cli scenario files and env catalog") {
    const std::string cfg = tmp("scenario.cfg");
    {
        std::ofstream f(cfg);
        f << "[scenario]\ndirection = dl\nst_deployment = macro\n"
             "ap_hop_distance_m = 400\np_out_total = 0.1\nmcs = 10\n";
    }
    const std::string out = tmp("relay.txt");
    REQUIRE(run("-o " + out + " relay-range --scenario " + cfg) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("st_hop_max_m=") != std::string::npos);
    CHECK(text.find("limiting_hop=") != std::string::npos);

    SUBCASE("broken scenario reports position and exits 2") {
        {
            std::ofstream f(cfg);
            f << "[scenario]\nhalf a line\n";
        }
        CHECK(run("relay-range --scenario " + cfg) == 2);
    }
    SUBCASE("missing catalog path exits 2") {
        CHECK(run("--catalog /no/such/catalog.txt fade-margin --p-out 0.1") == 2);
    }
}

TEST_CASE("cli reruns are byte-identical") {
    const std::string a = tmp("a.csv"), b = tmp("b.csv");
    const std::string sweep = "rate --distances 100:1000:100";
    REQUIRE(run("-o " + a + " " + sweep) == 0);
    REQUIRE(run("-o " + b + " " + sweep) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("distance_m,rate_bps") == 0);

    SUBCASE("simulator CSVs identical across 1, 2, and 8 workers") {
        const std::string sim =
            "ber-sim --distances 250,400 --trials 400 --min-errors 1000000 --seed 11 ";
        std::string first;
        for (int w : {1, 2, 8}) {
            const std::string out = tmp("sim_w" + std::to_string(w) + ".csv");
            REQUIRE(run("-o " + out + " " + sim + "--workers " + std::to_string(w)) == 0);
            const std::string body = slurp(out);
            if (first.empty()) first = body;
            CHECK(body == first);
        }
        CHECK(first.find("distance_m,ber,") == 0);
    }
}

TEST_CASE("cli json and gnuplot outputs") {
    const std::string out = tmp("fm.json");
    REQUIRE(run("--json -o " + out + " fade-margin --p-out-grid 0.05,0.1") == 0);
    const std::string body = slurp(out);
    CHECK(body.find("\"rows\"") != std::string::npos);
    CHECK(body.find("9.77") != std::string::npos);

    const std::string csv = tmp("plot.csv"), gp = tmp("plot.gp");
    REQUIRE(run("-o " + csv + " --gnuplot-stub " + gp +
                " rate --distances 100:300:100") == 0);
    const std::string stub = slurp(gp);
    CHECK(stub.find("plot '" + csv + "'") != std::string::npos);
    CHECK(stub.find("separator ','") != std::string::npos);
}

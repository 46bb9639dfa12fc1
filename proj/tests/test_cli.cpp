#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct cli_run {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cli_run run_cli(const std::string& args) {
    static int counter = 0;
    std::string base = "/tmp/qrep_cli_test_" + std::to_string(counter++);
    std::string out_path = base + ".out";
    std::string err_path = base + ".err";
    std::string cmd = std::string(QREP_BINARY_PATH) + " " + args + " > " + out_path + " 2> " +
                      err_path;
    int status = std::system(cmd.c_str());
    cli_run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

// Strict little CSV reader: every record must have the header's arity.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
    std::vector<std::map<std::string, std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    REQUIRE(std::getline(ss, line));
    auto header = split(line, ',');
    REQUIRE(!header.empty());
    while (std::getline(ss, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line, ',');
        REQUIRE(cells.size() == header.size());
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) {
            row[header[i]] = cells[i];
        }
        rows.push_back(row);
    }
    REQUIRE(!rows.empty());
    return rows;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) {
    auto it = row.find(key);
    REQUIRE(it != row.end());
    return std::stod(it->second);
}

}  // namespace

TEST_CASE("help exits cleanly without computing") {
    auto top = run_cli("--help");
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("Usage") != std::string::npos);

    auto sub = run_cli("simulate --help");
    CHECK(sub.exit_code == 0);
    CHECK(sub.out.find("--seed") != std::string::npos);

    auto none = run_cli("");
    CHECK(none.exit_code == 2);
}

TEST_CASE("usage and validation failures exit with code 2") {
    CHECK(run_cli("table1 --distances \"\"").exit_code == 2);
    CHECK(run_cli("optimize --bogus 1").exit_code == 2);
    CHECK(run_cli("optimize --format xml").exit_code == 2);
    CHECK(run_cli("optimize --beta_sq 1.5 --distances 1000").exit_code == 2);
    CHECK(run_cli("simulate --p_levels 0.5").exit_code == 2);
    CHECK(run_cli("table1 --config /tmp/qrep_missing.cfg").exit_code == 2);

    std::ofstream bad("/tmp/qrep_bad_key.cfg");
    bad << "beta_squared = 0.1\n";
    bad.close();
    CHECK(run_cli("optimize --config /tmp/qrep_bad_key.cfg").exit_code == 2);
    std::remove("/tmp/qrep_bad_key.cfg");
}

TEST_CASE("thresholds reports the error-parameter limits") {
    auto r = run_cli("thresholds");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    const auto& row = rows.front();
    CHECK(num(row, "p2_threshold") == doctest::Approx(3.7e-4).epsilon(0.03));
    CHECK(num(row, "p_dark_threshold") > 0.0);
    CHECK(num(row, "p_dark_reference") == doctest::Approx(4.6e-6).epsilon(1e-6));
    double p1x = num(row, "p1_crossover");
    CHECK(p1x > 0.60);
    CHECK(p1x < 0.75);

    auto infeasible = run_cli("thresholds --target-fidelity 1.0");
    CHECK(infeasible.exit_code == 3);
    CHECK(!infeasible.err.empty());
}

TEST_CASE("oracle-check passes at the reference configuration") {
    auto r = run_cli("oracle-check");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    CHECK(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row.at("pass") == "true");
    }
}

TEST_CASE("simulate matches the geometric law and echoes the seed") {
    auto r = run_cli("simulate --p_levels 0.5,1 --trials 100000 --seed 7");
    REQUIRE(r.exit_code == 0);
    auto row = parse_csv(r.out).front();
    CHECK(row.at("seed") == "7");
    double slots = num(row, "mean_s") / num(row, "slot_s");
    double stderr_slots = num(row, "stderr_s") / num(row, "slot_s");
    CHECK(std::abs(slots - 2.0) < 3.0 * stderr_slots);
    double ratio = num(row, "ratio");
    CHECK(ratio > 0.6);
    CHECK(ratio < 1.5);
}

TEST_CASE("simulate output is byte-identical for a fixed seed") {
    std::string args = "simulate --p_levels 0.4,0.5,0.5 --trials 5000 --seed 21";
    auto a = run_cli(args + " --out /tmp/qrep_det_a.csv");
    auto b = run_cli(args + " --out /tmp/qrep_det_b.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    std::string text_a = slurp("/tmp/qrep_det_a.csv");
    std::string text_b = slurp("/tmp/qrep_det_b.csv");
    CHECK(text_a == text_b);
    CHECK(!text_a.empty());

    auto c = run_cli(args + " --seed 22 --out /tmp/qrep_det_c.csv");
    REQUIRE(c.exit_code == 0);
    CHECK(slurp("/tmp/qrep_det_c.csv") != text_a);
    std::remove("/tmp/qrep_det_a.csv");
    std::remove("/tmp/qrep_det_b.csv");
    std::remove("/tmp/qrep_det_c.csv");
}

TEST_CASE("configuration precedence is command line over file over defaults") {
    std::ofstream cfg("/tmp/qrep_prec.cfg");
    cfg << "seed = 9\n";
    cfg << "# comment line\n";
    cfg << "trials = 50\n";
    cfg.close();

    auto file_only = run_cli("simulate --p_levels 0.5,1 --config /tmp/qrep_prec.cfg");
    REQUIRE(file_only.exit_code == 0);
    auto row = parse_csv(file_only.out).front();
    CHECK(row.at("seed") == "9");
    CHECK(row.at("trials") == "50");

    auto with_cli = run_cli("simulate --p_levels 0.5,1 --config /tmp/qrep_prec.cfg --seed 11");
    REQUIRE(with_cli.exit_code == 0);
    auto row2 = parse_csv(with_cli.out).front();
    CHECK(row2.at("seed") == "11");
    CHECK(row2.at("trials") == "50");
    std::remove("/tmp/qrep_prec.cfg");
}

TEST_CASE("json output carries the same fields as csv") {
    auto csv = run_cli("optimize --distances 1000");
    REQUIRE(csv.exit_code == 0);
    auto csv_row = parse_csv(csv.out).front();

    auto json = run_cli("optimize --distances 1000 --format json");
    REQUIRE(json.exit_code == 0);
    auto doc = nlohmann::json::parse(json.out);
    REQUIRE(doc.contains("rows"));
    REQUIRE(doc["rows"].size() == 1);
    const auto& jrow = doc["rows"][0];
    for (const auto& [key, value] : csv_row) {
        REQUIRE(jrow.contains(key));
        CHECK(std::stod(value) == doctest::Approx(jrow[key].get<double>()).epsilon(1e-9));
    }

    CHECK(jrow["n"].get<int>() == 3);
    CHECK(jrow["beta_sq"].get<double>() == doctest::Approx(0.11).epsilon(0.1));
    CHECK(jrow["T_sps_s"].get<double>() == doctest::Approx(250.0).epsilon(0.03));
}

TEST_CASE("table1 reproduces the distance scan") {
    auto r = run_cli("table1");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);

    CHECK(num(rows[0], "distance_km") == 1000.0);
    CHECK(num(rows[0], "T_sps_s") == doctest::Approx(250.0).epsilon(0.03));
    CHECK(num(rows[0], "n_sps") == 3);
    CHECK(num(rows[0], "beta_sq") == doctest::Approx(0.11).epsilon(0.1));
    double t_dlcz = num(rows[0], "T_dlcz_s");
    CHECK(t_dlcz > 4600.0 / 2.0);
    CHECK(t_dlcz < 4600.0 * 2.0);
    double gain0 = num(rows[0], "gain");
    CHECK(gain0 > 12.0);
    CHECK(gain0 < 25.0);

    CHECK(num(rows[3], "distance_km") == 2500.0);
    CHECK(num(rows[3], "T_sps_s") == doctest::Approx(15300.0).epsilon(0.03));
    CHECK(num(rows[3], "n_sps") == 4);
    CHECK(num(rows[3], "beta_sq") == doctest::Approx(0.08).epsilon(0.13));
    CHECK(num(rows[3], "gain") >= 30.0);

    double prev = 0.0;
    for (const auto& row : rows) {
        double g = num(row, "gain");
        CHECK(g > prev);
        prev = g;
    }
}

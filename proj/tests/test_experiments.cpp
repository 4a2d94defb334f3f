#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "primecouple/experiments.hpp"

using namespace primecouple;

namespace {

ExperimentConfig base(const std::string& sub) {
    ExperimentConfig cfg;
    cfg.subcommand = sub;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(run_experiment(base("no-such-thing")), ConfigError);

    ExperimentConfig bad_fmt = base("crude-u");
    bad_fmt.format = "xml";
    std::ostringstream o, e;
    CHECK(run(bad_fmt, o, e) == 2);

    ExperimentConfig bad_scale = base("crude-u");
    bad_scale.tolerance_scale = -1.0;
    CHECK_THROWS_AS(run_experiment(bad_scale), ConfigError);

    ExperimentConfig bad_b = base("dtv-small-primes");
    bad_b.b = 500.0;
    CHECK_THROWS_AS(run_experiment(bad_b), ConfigError);

    ExperimentConfig small_tables = base("grow-int");
    small_tables.n_grid = {1000};
    small_tables.tables_limit = 500;
    CHECK_THROWS_AS(run_experiment(small_tables), ConfigError);
}

TEST_CASE("csv golden output") {
    ExperimentConfig cfg = base("crude-u");
    cfg.n_grid = {4};
    cfg.b = 2;
    ExperimentOutput out = run_experiment(cfg);
    REQUIRE(out.all_pass());
    std::string csv = to_csv(out.rows);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "experiment,n,trials,seed,metric,value,stderr,truncation_error,paper_anchor");
    CHECK(csv.find("crude-u,4,") != std::string::npos);
    CHECK(csv.find(",u_b2,0.5,") != std::string::npos);
    // every data line has exactly eight commas
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
}

TEST_CASE("value formatting round trips doubles") {
    ResultRow r{"x", 1, 2, 3, "m", 0.1, 0.0, 0.0, ""};
    std::string line = csv_line(r);
    CHECK(line == "x,1,2,3,m,0.10000000000000001,0,0,");
    r.value = 2.0;
    CHECK(csv_line(r) == "x,1,2,3,m,2,0,0,");
}

TEST_CASE("json mirrors the rows") {
    ResultRow a{"exp", 10, 5, 7, "metric_one", 0.25, 0.5, 0.0, "def u"};
    ResultRow b{"exp", 20, 5, 7, "metric_two", std::numeric_limits<double>::quiet_NaN(), 0.0,
                0.0, ""};
    std::string js = to_json({a, b});
    auto parsed = nlohmann::json::parse(js);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["experiment"] == "exp");
    CHECK(parsed[0]["n"] == 10);
    CHECK(parsed[0]["value"] == 0.25);
    CHECK(parsed[0]["stderr"] == 0.5);
    CHECK(parsed[0]["paper_anchor"] == "def u");
    CHECK(parsed[1]["value"].is_null());
}

TEST_CASE("rows sort by experiment, n, seed with stable ties") {
    std::vector<ResultRow> rows;
    rows.push_back({"b", 2, 0, 1, "first", 0, 0, 0, ""});
    rows.push_back({"a", 9, 0, 1, "x", 0, 0, 0, ""});
    rows.push_back({"b", 1, 0, 9, "y", 0, 0, 0, ""});
    rows.push_back({"b", 2, 0, 1, "second", 0, 0, 0, ""});
    rows.push_back({"b", 2, 0, 0, "z", 0, 0, 0, ""});
    sort_rows(rows);
    CHECK(rows[0].experiment == "a");
    CHECK(rows[1].metric == "y");
    CHECK(rows[2].metric == "z");
    CHECK(rows[3].metric == "first");
    CHECK(rows[4].metric == "second");
}

TEST_CASE("anchors come from the registry") {
    const auto& reg = anchor_registry();
    REQUIRE(!reg.empty());
    for (const char* sub : {"crude-u", "region-mean", "entropy"}) {
        ExperimentConfig cfg = base(sub);
        if (cfg.subcommand == "crude-u") {
            cfg.n_grid = {16};
            cfg.b = 2;
        }
        if (cfg.subcommand == "region-mean") cfg.n_grid = {5};
        ExperimentOutput out = run_experiment(cfg);
        for (const auto& row : out.rows) {
            if (row.paper_anchor.empty()) continue;
            bool known = std::find(reg.begin(), reg.end(), row.paper_anchor) != reg.end();
            CHECK(known);
        }
    }
}

TEST_CASE("repeat runs are byte identical") {
    ExperimentConfig cfg = base("spacing-test");
    cfg.trials = 300;
    ExperimentOutput a = run_experiment(cfg);
    ExperimentOutput b = run_experiment(cfg);
    CHECK(to_csv(a.rows) == to_csv(b.rows));
    REQUIRE(a.all_pass());
}

TEST_CASE("tolerance scale turns the verdict") {
    ExperimentConfig cfg = base("region-mean");
    cfg.n_grid = {5};
    std::ostringstream o1, e1;
    CHECK(run(cfg, o1, e1) == 0);
    CHECK(o1.str().find("experiment,n,") == 0);
    CHECK(e1.str().find("[PASS]") != std::string::npos);

    cfg.tolerance_scale = 1e-6;
    std::ostringstream o2, e2;
    CHECK(run(cfg, o2, e2) == 1);
    CHECK(e2.str().find("[FAIL]") != std::string::npos);
}

TEST_CASE("rows land in the out file instead of the stream") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "primecouple-test-out";
    fs::create_directories(dir);
    fs::path file = dir / "rows.csv";

    ExperimentConfig cfg = base("crude-u");
    cfg.n_grid = {4};
    cfg.b = 2;
    cfg.out_path = file.string();
    std::ostringstream o, e;
    CHECK(run(cfg, o, e) == 0);
    CHECK(o.str().empty());
    std::ifstream in(file);
    std::stringstream content;
    content << in.rdbuf();
    ExperimentOutput direct = run_experiment(cfg);
    CHECK(content.str() == to_csv(direct.rows));
    fs::remove_all(dir);
}

TEST_CASE("json format goes through run") {
    ExperimentConfig cfg = base("crude-u");
    cfg.n_grid = {4};
    cfg.b = 2;
    cfg.format = "json";
    std::ostringstream o, e;
    CHECK(run(cfg, o, e) == 0);
    auto parsed = nlohmann::json::parse(o.str());
    CHECK(parsed.is_array());
    CHECK(!parsed.empty());
}

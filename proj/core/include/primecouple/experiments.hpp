#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace primecouple {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string subcommand;
    std::vector<std::uint64_t> n_grid;  // empty selects the subcommand default
    std::uint64_t trials = 0;           // 0 selects the subcommand default
    std::vector<std::uint64_t> seeds;   // empty selects {7, 1009, 524287}
    std::uint64_t tables_limit = 0;     // 0 derives the limit from n_grid
    double b = 0;                       // window half-width / prime cutoff, 0 = default
    double tolerance_scale = 1.0;       // multiplies every allowance; 0.01 forces failures
    std::string out_path;               // empty writes rows to stdout
    std::string format = "csv";         // csv | json
    std::string cache_dir;              // pmf cache location, empty = no cache
    bool primes_only = false;           // entropy: only the prime-sum row
};

// One emitted measurement.  std_error is written under the CSV column name
// "stderr"; paper_anchor is the equation tag the row tests, empty for rows
// that feed no bound.
struct ResultRow {
    std::string experiment;
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0;
    double std_error = 0;
    double truncation_error = 0;
    std::string paper_anchor;
};

struct BoundCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    int row_index = -1;  // into ExperimentOutput::rows, -1 if none
};

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    std::vector<BoundCheck> checks;
    bool all_pass() const;
};

// The closed vocabulary for nonempty paper_anchor values.
const std::vector<std::string>& anchor_registry();

// Stable sort by (experiment, n, seed); emission order breaks ties.
void sort_rows(std::vector<ResultRow>& rows);

// Fixed columns: experiment,n,trials,seed,metric,value,stderr,truncation_error,paper_anchor
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);
std::string csv_line(const ResultRow& row);

// Runs one subcommand at the configured scale.  Rows come back sorted.
// Throws ConfigError on an invalid config.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// The full fixed-scale verification battery behind the `accept` subcommand:
// every numbered check at its pinned size, one BoundCheck per claim, plus the
// two-pass byte-identity re-generation.  Honors tolerance_scale and
// cache_dir; other fields are pinned.
ExperimentOutput acceptance_suite(const ExperimentConfig& config);

// Dispatch + serialization + report.  Rows go to config.out_path or `out`;
// check lines and failing rows go to `err`.  Returns 0 if every check
// passed, 1 otherwise, 2 on a config error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace primecouple

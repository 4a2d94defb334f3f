#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primecouple/experiments.hpp"

namespace {

std::string criterion_prefix(int k) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "c%02d", k);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"runs every numbered acceptance criterion and prints one line per criterion"};
    primecouple::ExperimentConfig cfg;
    cfg.subcommand = "accept";
    app.add_option("--out", cfg.out_path, "also write the result rows as CSV to this file");
    app.add_option("--cache-dir", cfg.cache_dir, "directory for density caches");
    app.add_option("--tolerance-scale", cfg.tolerance_scale,
                   "multiply every bound check's allowance");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    primecouple::ExperimentOutput out;
    try {
        out = primecouple::acceptance_suite(cfg);
    } catch (const primecouple::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!f) {
            std::cerr << "config error: cannot open " << cfg.out_path << "\n";
            return 2;
        }
        f << primecouple::to_csv(out.rows);
    }

    bool all_ok = true;
    for (int k = 1; k <= 18; ++k) {
        std::string prefix = criterion_prefix(k) + "/";
        int total = 0, passed = 0;
        std::vector<const primecouple::BoundCheck*> failed;
        for (const primecouple::BoundCheck& c : out.checks) {
            if (c.name.compare(0, prefix.size(), prefix) != 0) continue;
            ++total;
            if (c.pass)
                ++passed;
            else
                failed.push_back(&c);
        }
        bool ok = total > 0 && passed == total;
        all_ok = all_ok && ok;
        std::printf("criterion %02d: %s (%d/%d checks)\n", k, ok ? "PASS" : "FAIL", passed,
                    total);
        for (const primecouple::BoundCheck* c : failed) {
            std::printf("    FAIL %s: %s\n", c->name.c_str(), c->detail.c_str());
            if (c->row_index >= 0 && c->row_index < static_cast<int>(out.rows.size()))
                std::printf("         row: %s\n",
                            primecouple::csv_line(out.rows[static_cast<std::size_t>(c->row_index)])
                                .c_str());
        }
    }
    std::printf("acceptance: %s (%zu rows, %zu checks)\n", all_ok ? "PASS" : "FAIL",
                out.rows.size(), out.checks.size());
    return all_ok ? 0 : 1;
}

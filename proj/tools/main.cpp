#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primecouple/experiments.hpp"

namespace {

struct CliState {
    primecouple::ExperimentConfig cfg;
    std::uint64_t n_single = 0;
    bool simulate = false;
    bool primes_only = false;
};

void add_common(CLI::App* sub, CliState& st) {
    sub->add_option("--n", st.n_single, "single n, shorthand for a one-point grid");
    sub->add_option("--n-grid", st.cfg.n_grid, "comma-separated n values")->delimiter(',');
    sub->add_option("--trials", st.cfg.trials, "Monte Carlo trials per cell");
    sub->add_option("--seed", st.cfg.seeds, "RNG seed, repeatable")->delimiter(',');
    sub->add_option("--tables-limit", st.cfg.tables_limit, "sieve limit override");
    sub->add_option("--out", st.cfg.out_path, "write rows to this file instead of stdout");
    sub->add_option("--format", st.cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--cache-dir", st.cfg.cache_dir, "directory for density caches");
    sub->add_option("--tolerance-scale", st.cfg.tolerance_scale,
                    "multiply every bound check's allowance");
}

}  // namespace

int main(int argc, char** argv) {
    CliState st;
    CLI::App app{"couplings between random-integer factorizations and permutation cycles"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.get_formatter()->column_width(32);

    CLI::App* feller = app.add_subcommand(
        "feller", "cycle counts of a uniform permutation against the independent limit");
    add_common(feller, st);

    CLI::App* grow = app.add_subcommand(
        "grow-int", "multiplicative growth coupling, edit distance to the prime multiset");
    add_common(grow, st);
    grow->add_flag("--simulate", st.simulate, "skip the exact-uniform correction step");

    CLI::App* pd = app.add_subcommand(
        "pd-distance", "ranked log-factor vector against scaled stick-breaking spacings");
    add_common(pd, st);

    CLI::App* dtv = app.add_subcommand(
        "dtv-small-primes", "exact variation distance for small-prime exponent vectors");
    add_common(dtv, st);
    dtv->add_option("--b", st.cfg.b, "prime cutoff (2..30)");

    CLI::App* cu = app.add_subcommand("crude-u", "summed modeling-error bound for exponent vectors");
    add_common(cu, st);
    cu->add_option("--b", st.cfg.b, "prime cutoff (2..30)");

    CLI::App* pmf = app.add_subcommand(
        "pmf-j", "quadrature law of the anchored divisor, mass and simulated marginal");
    add_common(pmf, st);

    CLI::App* jp0 = app.add_subcommand(
        "dtv-jp0", "distance of the anchored divisor-prime product from uniform");
    add_common(jp0, st);

    CLI::App* ent = app.add_subcommand(
        "entropy", "information gained by splitting geometric counts into parts");
    add_common(ent, st);
    ent->add_flag("--primes", st.primes_only, "only the summed per-prime increments");

    CLI::App* rm = app.add_subcommand(
        "region-mean", "expected points of the labeled square region, quadrature and sampling");
    add_common(rm, st);
    rm->add_option("--b", st.cfg.b, "square side length");

    CLI::App* sp = app.add_subcommand(
        "spacing-test", "window counts of the scale-invariant point process");
    add_common(sp, st);

    CLI::App* dk = app.add_subcommand(
        "dickman", "largest stick-breaking component and the smooth-density solver");
    add_common(dk, st);

    CLI::App* acc = app.add_subcommand("accept", "full acceptance suite at pinned scales");
    acc->add_option("--out", st.cfg.out_path, "write rows to this file instead of stdout");
    acc->add_option("--format", st.cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    acc->add_option("--cache-dir", st.cfg.cache_dir, "directory for density caches");
    acc->add_option("--tolerance-scale", st.cfg.tolerance_scale,
                    "multiply every bound check's allowance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    st.cfg.subcommand = app.get_subcommands().front()->get_name();
    if (st.cfg.subcommand == "grow-int" && st.simulate) st.cfg.subcommand = "grow-int-simulate";
    if (st.n_single) st.cfg.n_grid = {st.n_single};
    st.cfg.primes_only = st.primes_only;
    return primecouple::run(st.cfg, std::cout, std::cerr);
}

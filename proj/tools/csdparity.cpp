// csdparity: exact parity computations for simple supercuspidal representations
// of division algebras over local fields, with closed-form cross-checks.

#include "csd/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CliOptions {
    csd::RunConfig cfg;
    std::string out_path;
    std::vector<std::string> case_names{"split", "unramified", "ramified"};
};

void add_common(CLI::App* app, CliOptions& o) {
    app->add_option("--case", o.case_names, "cases to run: split, unramified, ramified")
        ->envname("CSDPARITY_CASE");
    app->add_option("--q", o.cfg.qs, "residue sizes q for the split/ramified cases")
        ->envname("CSDPARITY_Q");
    app->add_option("--qprime", o.cfg.qprimes, "residue sizes q' for the unramified case")
        ->envname("CSDPARITY_QPRIME");
    app->add_option("--n", o.cfg.ns, "ranks n of the division algebra")->envname("CSDPARITY_N");
    app->add_option("--m", o.cfg.m, "truncation length of the D-model (>= 2)")
        ->envname("CSDPARITY_M");
    app->add_option("--c-order", o.cfg.c_order,
                    "root-of-unity order for the c grid (0: lcm(4, q-1))")
        ->envname("CSDPARITY_C_ORDER");
    app->add_option("--seed", o.cfg.seed, "seed for sampled checks")->envname("CSDPARITY_SEED");
    app->add_option("--samples", o.cfg.sample_budget, "sample budget for non-exhaustive checks")
        ->envname("CSDPARITY_SAMPLES");
    app->add_option("--max-dim", o.cfg.max_dim, "skip instances above this induced dimension")
        ->envname("CSDPARITY_MAX_DIM");
    app->add_option("--format", o.cfg.format, "output format: human, jsonl, csv")
        ->envname("CSDPARITY_FORMAT");
    app->add_option("--out", o.out_path, "write records to a file instead of stdout")
        ->envname("CSDPARITY_OUT");
    app->add_flag("--timing", o.cfg.timing,
                  "include per-instance timing (output is then not reproducible)")
        ->envname("CSDPARITY_TIMING");
}

int run(int (*fn)(const csd::RunConfig&, std::ostream&, std::ostream&), CliOptions& o) {
    o.cfg.cases.clear();
    for (const auto& s : o.case_names) {
        auto c = csd::case_from_name(s);
        if (!c) {
            std::cerr << "unknown case: " << s << "\n";
            return 2;
        }
        o.cfg.cases.push_back(*c);
    }
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        if (!f) {
            std::cerr << "cannot open " << o.out_path << "\n";
            return 2;
        }
        return fn(o.cfg, f, std::cerr);
    }
    return fn(o.cfg, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact parity of conjugate self-dual simple supercuspidal representations:\n"
        "brute-force invariant pairings on the division-algebra side against the\n"
        "closed forms, plus the Dieudonne and finite-group verification suites."};
    app.require_subcommand(1);

    CliOptions o;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "enumerate admissible (zeta, chi, c) and check every parity identity");
    add_common(sweep, o);

    CLI::App* verify = app.add_subcommand(
        "verify", "twist axioms, GL-side intertwining identities, irreducibility, z-membership");
    add_common(verify, o);
    verify->add_flag("--inject-fault", o.cfg.inject_fault,
                     "deliberately corrupt the intertwiner (negative control)");

    CLI::App* dieu = app.add_subcommand("dieudonne", "Dieudonne module identity suite");
    add_common(dieu, o);
    bool dieu_full_default = true;  // n <= 6, q <= 9 unless ranges were given

    CLI::App* frame =
        app.add_subcommand("framework", "finite-group parity framework property suite");
    add_common(frame, o);

    CLI::App* tower = app.add_subcommand("tower", "dump the field-tower data as JSON");
    add_common(tower, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run(csd::cmd_sweep, o);
        if (verify->parsed()) return run(csd::cmd_verify, o);
        if (dieu->parsed()) {
            if (dieu_full_default && dieu->count("--q") == 0) o.cfg.qs = {2, 3, 4, 5, 7, 8, 9};
            if (dieu_full_default && dieu->count("--qprime") == 0) o.cfg.qprimes = {2, 3};
            if (dieu_full_default && dieu->count("--n") == 0) o.cfg.ns = {1, 2, 3, 4, 5, 6};
            return run(csd::cmd_dieudonne, o);
        }
        if (frame->parsed()) return run(csd::cmd_framework, o);
        if (tower->parsed()) return run(csd::cmd_tower, o);
    } catch (const std::exception& ex) {
        std::cerr << "fatal: " << ex.what() << "\n";
        return 3;
    }
    return 2;
}

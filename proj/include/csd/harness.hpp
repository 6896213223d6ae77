#pragma once

#include "csd/dieudonne.hpp"
#include "csd/framework.hpp"
#include "csd/parity.hpp"

#include <iosfwd>

namespace csd {

constexpr int kReportSchemaVersion = 1;

struct RunConfig {
    std::vector<Case> cases{Case::split, Case::unramified, Case::ramified};
    std::vector<std::uint64_t> qs{2, 3, 4, 5};      // split / ramified q
    std::vector<std::uint64_t> qprimes{2};          // unramified q'
    std::vector<unsigned> ns{1, 2, 3};
    unsigned m = 2;
    unsigned c_order = 0;  // 0: lcm(4, q-1)
    std::uint64_t seed = 1;
    unsigned sample_budget = 1000;
    std::uint64_t max_dim = 200;
    std::string format = "human";  // human | jsonl | csv
    bool timing = false;
    bool inject_fault = false;
};

struct InstanceRecord {
    std::string kase;
    std::uint64_t q = 0, qprime = 0;
    unsigned n = 0;
    std::uint64_t zeta_dlog = 0, chi_exp = 0;
    long c_order = 4, c_exp = 0;
    bool csd = true;
    int c_jl_brute = 0, c_jl_closed = 0, c_rec = 0;
    bool consistent = false;
    std::string witness;
    long ms = -1;  // emitted only with cfg.timing
};

// All admissible (csd) triples for one case instance, in deterministic order.
std::vector<InstanceRecord> sweep_instances(const LocalContext& cx, const RunConfig& cfg);

// Subcommand drivers; they print to `out` (records) and `err` (warnings) and
// return the process exit code (0 iff everything passed).
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dieudonne(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_framework(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_tower(const RunConfig& cfg, std::ostream& out, std::ostream& err);

void emit_records(const std::vector<InstanceRecord>& recs, const RunConfig& cfg,
                  std::ostream& out);
void emit_report(const Report& rep, const RunConfig& cfg, std::ostream& out);

}  // namespace csd

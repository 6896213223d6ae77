#include <doctest.h>

#include "csd/harness.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

using namespace csd;

namespace {

RunConfig base_cfg() {
    RunConfig cfg;
    cfg.format = "jsonl";
    return cfg;
}

}  // namespace

TEST_CASE("split q=3, n=2 sweep has exactly 8 admissible instances, all consistent") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::split};
    cfg.qs = {3};
    cfg.ns = {2};
    std::ostringstream out, err;
    int rc = cmd_sweep(cfg, out, err);
    CHECK(rc == 0);
    std::istringstream in(out.str());
    std::string line;
    unsigned count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["consistent"] == true);
        CHECK(j["schema"] == kReportSchemaVersion);
        CHECK(!j.contains("ms"));
        ++count;
    }
    CHECK(count == 8);  // 2 zeta x 2 chi x 2 c
}

TEST_CASE("ramified q=3, n=2 sweep yields no instances and a warning") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::ramified};
    cfg.qs = {3};
    cfg.ns = {2};
    std::ostringstream out, err;
    int rc = cmd_sweep(cfg, out, err);
    CHECK(rc == 0);
    CHECK(out.str().empty());
    CHECK(err.str().find("no admissible") != std::string::npos);
}

TEST_CASE("unramified q'=2, n=2 sweep is consistent") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::unramified};
    cfg.qprimes = {2};
    cfg.ns = {2};
    std::ostringstream out, err;
    CHECK(cmd_sweep(cfg, out, err) == 0);
    CHECK(!out.str().empty());
}

TEST_CASE("identical configs produce byte-identical output") {
    for (std::string fmt : {"human", "jsonl", "csv"}) {
        RunConfig cfg = base_cfg();
        cfg.format = fmt;
        cfg.cases = {Case::split, Case::ramified};
        cfg.qs = {2, 3};
        cfg.ns = {1, 2};
        std::ostringstream o1, o2, e1, e2;
        CHECK(cmd_sweep(cfg, o1, e1) == 0);
        CHECK(cmd_sweep(cfg, o2, e2) == 0);
        CHECK(o1.str() == o2.str());
        CHECK(!o1.str().empty());
    }
}

TEST_CASE("csv output round-trips through a parser") {
    RunConfig cfg = base_cfg();
    cfg.format = "csv";
    cfg.cases = {Case::split};
    cfg.qs = {3};
    cfg.ns = {2};
    std::ostringstream out, err;
    CHECK(cmd_sweep(cfg, out, err) == 0);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("case,q,qprime,n,zeta,chi,c_order,c,csd,", 0) == 0);
    std::string line;
    unsigned rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find("split,3,3,2,") == 0);
        ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("verify command succeeds on defaults and fails under fault injection") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::split};
    cfg.qs = {3};
    cfg.ns = {2};
    std::ostringstream out, err;
    CHECK(cmd_verify(cfg, out, err) == 0);
    cfg.inject_fault = true;
    std::ostringstream out2, err2;
    CHECK(cmd_verify(cfg, out2, err2) != 0);
}

TEST_CASE("dieudonne and framework commands pass") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::split, Case::unramified, Case::ramified};
    cfg.qs = {3};
    cfg.qprimes = {2};
    cfg.ns = {2, 3};
    std::ostringstream out, err;
    CHECK(cmd_dieudonne(cfg, out, err) == 0);
    std::ostringstream out2, err2;
    CHECK(cmd_framework(cfg, out2, err2) == 0);
}

TEST_CASE("tower dump is valid JSON and reproducible") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::split};
    cfg.qs = {3};
    cfg.ns = {2};
    std::ostringstream out, err, out2, err2;
    CHECK(cmd_tower(cfg, out, err) == 0);
    CHECK(cmd_tower(cfg, out2, err2) == 0);
    CHECK(out.str() == out2.str());
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["tower"]["p"] == 3);
    CHECK(j["cyclotomic_modulus"] == 12);
}

TEST_CASE("timing flag adds the ms field") {
    RunConfig cfg = base_cfg();
    cfg.cases = {Case::split};
    cfg.qs = {3};
    cfg.ns = {2};
    cfg.timing = true;
    std::ostringstream out, err;
    CHECK(cmd_sweep(cfg, out, err) == 0);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(nlohmann::json::parse(line).contains("ms"));
}

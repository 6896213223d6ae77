#include "csd/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>

namespace csd {

namespace {

std::uint64_t effective_c_order(const LocalContext& cx, const RunConfig& cfg) {
    return cfg.c_order ? cfg.c_order : std::lcm<std::uint64_t>(4, cx.q - 1);
}

LocalContext context_for(Case kind, std::uint64_t arg, unsigned n, const RunConfig& cfg) {
    return make_context(kind, arg, n, cfg.m, cfg.c_order);
}

// (case, q-or-q', n) combinations of a config, deterministic order
std::vector<std::tuple<Case, std::uint64_t, unsigned>> combos(const RunConfig& cfg,
                                                              std::ostream& err) {
    std::vector<std::tuple<Case, std::uint64_t, unsigned>> out;
    for (Case kind : {Case::split, Case::unramified, Case::ramified}) {
        if (std::find(cfg.cases.begin(), cfg.cases.end(), kind) == cfg.cases.end()) continue;
        const auto& args = kind == Case::unramified ? cfg.qprimes : cfg.qs;
        for (std::uint64_t a : args) {
            if (kind == Case::ramified && a % 2 == 0) {
                err << "warning: ramified case skipped for even q = " << a << "\n";
                continue;
            }
            for (unsigned n : cfg.ns) out.emplace_back(kind, a, n);
        }
    }
    return out;
}

}  // namespace

namespace {

// (zeta_dlog, chi_exp, c_exp) of every conjugate self-dual triple, in order
std::vector<std::tuple<std::uint64_t, std::uint64_t, long>> admissible_triples(
    const LocalContext& cx, long corder) {
    const Tower& t = cx.tower();
    std::vector<std::tuple<std::uint64_t, std::uint64_t, long>> out;
    for (std::uint64_t zd = 0; zd < cx.q - 1; ++zd)
        for (std::uint64_t e = 0; e < cx.q - 1; ++e)
            for (long ce = 0; ce < corder; ++ce) {
                SscParamsGL p =
                    make_ssc_gl(cx, t.pow(t.gen(cx.lv_q), static_cast<long>(zd)), e, corder, ce);
                if (is_conjugate_self_dual(cx, p)) out.emplace_back(zd, e, ce);
            }
    return out;
}

}  // namespace

std::vector<InstanceRecord> sweep_instances(const LocalContext& cx, const RunConfig& cfg) {
    std::vector<InstanceRecord> recs;
    const Tower& t = cx.tower();
    long corder = static_cast<long>(effective_c_order(cx, cfg));
    TwistData tw = make_twist(cx);
    for (auto [zd, e, ce] : admissible_triples(cx, corder)) {
        SscParamsGL p =
            make_ssc_gl(cx, t.pow(t.gen(cx.lv_q), static_cast<long>(zd)), e, corder, ce);
        {
                InstanceRecord r;
                r.kase = case_name(cx.kind);
                r.q = cx.q;
                r.qprime = cx.qprime;
                r.n = cx.n;
                r.zeta_dlog = zd;
                r.chi_exp = e;
                r.c_order = corder;
                r.c_exp = ce;
                auto t0 = std::chrono::steady_clock::now();
                MainCheck mc = main_theorem_check(cx, p, tw);
                auto t1 = std::chrono::steady_clock::now();
                r.csd = true;
                r.c_jl_brute = mc.c_jl_brute;
                r.c_jl_closed = mc.c_jl_closed;
                r.c_rec = mc.c_rec_predicted;
                r.consistent = mc.consistent;
                r.witness = mc.witness.summary;
                r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
                recs.push_back(std::move(r));
        }
    }
    return recs;
}

namespace {

nlohmann::json record_json(const InstanceRecord& r, const RunConfig& cfg) {
    nlohmann::json j{{"schema", kReportSchemaVersion},
                     {"case", r.kase},
                     {"q", r.q},
                     {"qprime", r.qprime},
                     {"n", r.n},
                     {"zeta", r.zeta_dlog},
                     {"chi", r.chi_exp},
                     {"c_order", r.c_order},
                     {"c", r.c_exp},
                     {"csd", r.csd},
                     {"C_JL_brute", r.c_jl_brute},
                     {"C_JL_closed", r.c_jl_closed},
                     {"C_rec", r.c_rec},
                     {"consistent", r.consistent},
                     {"witness", r.witness}};
    if (cfg.timing) j["ms"] = r.ms;
    return j;
}

}  // namespace

void emit_records(const std::vector<InstanceRecord>& recs, const RunConfig& cfg,
                  std::ostream& out) {
    if (cfg.format == "jsonl") {
        for (const auto& r : recs) out << record_json(r, cfg).dump() << "\n";
        return;
    }
    if (cfg.format == "csv") {
        out << "case,q,qprime,n,zeta,chi,c_order,c,csd,C_JL_brute,C_JL_closed,C_rec,consistent,"
               "witness";
        if (cfg.timing) out << ",ms";
        out << "\n";
        for (const auto& r : recs) {
            out << r.kase << ',' << r.q << ',' << r.qprime << ',' << r.n << ',' << r.zeta_dlog
                << ',' << r.chi_exp << ',' << r.c_order << ',' << r.c_exp << ','
                << (r.csd ? 1 : 0) << ',' << r.c_jl_brute << ',' << r.c_jl_closed << ','
                << r.c_rec << ',' << (r.consistent ? 1 : 0) << ',' << '"' << r.witness << '"';
            if (cfg.timing) out << ',' << r.ms;
            out << "\n";
        }
        return;
    }
    // human table
    out << std::left << std::setw(11) << "case" << std::setw(4) << "q" << std::setw(4) << "q'"
        << std::setw(3) << "n" << std::setw(6) << "zeta" << std::setw(5) << "chi" << std::setw(8)
        << "c(exp)" << std::setw(9) << "C_JL(bf)" << std::setw(9) << "C_JL(cf)" << std::setw(7)
        << "C_rec" << std::setw(6) << "ok";
    if (cfg.timing) out << std::setw(7) << "ms";
    out << "\n";
    for (const auto& r : recs) {
        out << std::left << std::setw(11) << r.kase << std::setw(4) << r.q << std::setw(4)
            << r.qprime << std::setw(3) << r.n << std::setw(6) << r.zeta_dlog << std::setw(5)
            << r.chi_exp << std::setw(8)
            << (std::to_string(r.c_exp) + "/" + std::to_string(r.c_order)) << std::setw(9)
            << (r.c_jl_brute > 0 ? "+1" : "-1") << std::setw(9)
            << (r.c_jl_closed > 0 ? "+1" : "-1") << std::setw(7) << (r.c_rec > 0 ? "+1" : "-1")
            << std::setw(6) << (r.consistent ? "yes" : "NO");
        if (cfg.timing) out << std::setw(7) << r.ms;
        out << "\n";
    }
}

void emit_report(const Report& rep, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == "jsonl") {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& it : rep.items)
            items.push_back({{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
        out << nlohmann::json{{"schema", kReportSchemaVersion},
                              {"suite", rep.title},
                              {"pass", rep.ok()},
                              {"items", items}}
                   .dump()
            << "\n";
        return;
    }
    out << (rep.ok() ? "[pass] " : "[FAIL] ") << rep.title << "\n";
    for (const auto& it : rep.items)
        if (!it.pass)
            out << "  " << (it.pass ? "[pass] " : "[FAIL] ") << it.name
                << (it.detail.empty() ? "" : " : " + it.detail) << "\n";
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<InstanceRecord> all;
    bool hard_error = false;
    for (auto [kind, arg, n] : combos(cfg, err)) {
        LocalContext cx = context_for(kind, arg, n, cfg);
        if (cx.rep_dim() > cfg.max_dim) {
            err << "warning: " << case_name(kind) << " q=" << cx.q << " n=" << n
                << " skipped (dimension " << cx.rep_dim() << " above the cap " << cfg.max_dim
                << ")\n";
            continue;
        }
        std::vector<InstanceRecord> recs;
        try {
            recs = sweep_instances(cx, cfg);
        } catch (const std::exception& ex) {
            err << "error: " << case_name(kind) << " q=" << cx.q << " n=" << n << ": " << ex.what()
                << "\n";
            hard_error = true;
            continue;
        }
        if (recs.empty())
            err << "warning: " << case_name(kind) << " q=" << cx.q << " n=" << n
                << ": no admissible (conjugate self-dual) instances\n";
        all.insert(all.end(), recs.begin(), recs.end());
    }
    std::sort(all.begin(), all.end(), [](const InstanceRecord& a, const InstanceRecord& b) {
        return std::tie(a.kase, a.q, a.n, a.zeta_dlog, a.chi_exp, a.c_exp) <
               std::tie(b.kase, b.q, b.n, b.zeta_dlog, b.chi_exp, b.c_exp);
    });
    emit_records(all, cfg, out);
    bool all_ok = !hard_error;
    for (const auto& r : all) all_ok = all_ok && r.consistent;
    return all_ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = true;
    for (auto [kind, arg, n] : combos(cfg, err)) {
        LocalContext cx = context_for(kind, arg, n, cfg);
        if (cx.rep_dim() > cfg.max_dim) {
            err << "warning: " << case_name(kind) << " q=" << cx.q << " n=" << n
                << " skipped (dimension cap)\n";
            continue;
        }
        const Tower& t = cx.tower();
        try {
            // twist axioms (all betas when the ramified field is small)
            if (kind == Case::ramified && pow_u64(cx.q, 2 * cx.n) <= 1 << 14) {
                for (const auto& beta : all_valid_betas(cx)) {
                    Report r = check_twist_axioms(cx, make_twist_with_beta(cx, beta));
                    if (!r.ok()) ok = false;
                    emit_report(r, cfg, out);
                }
            } else {
                Report r = check_twist_axioms(cx, make_twist(cx));
                if (!r.ok()) ok = false;
                emit_report(r, cfg, out);
            }
            // GL-side identities
            SscParamsGL p = make_ssc_gl(cx, t.gen(cx.lv_q), 1 % (cx.q - 1),
                                        static_cast<long>(effective_c_order(cx, cfg)), 1);
            Report gi = verify_intertwiner_gl(cx, p, cfg.sample_budget, cfg.seed,
                                              cfg.inject_fault);
            if (!gi.ok()) ok = false;
            emit_report(gi, cfg, out);
            // irreducibility and z-membership across admissible instances
            TwistData tw = make_twist(cx);
            Report ir;
            ir.title = std::string("induction checks (") + case_name(kind) +
                       " q=" + std::to_string(cx.q) + " n=" + std::to_string(n) + ")";
            long corder = static_cast<long>(effective_c_order(cx, cfg));
            for (auto [zd, e, ce] : admissible_triples(cx, corder)) {
                SscParamsGL glp = make_ssc_gl(
                    cx, t.pow(t.gen(cx.lv_q), static_cast<long>(zd)), e, corder, ce);
                SscParamsD dp = jl_of_gl_params(cx, glp);
                MonomialRep rep = build_rep_d(cx, dp, tw);
                std::string tag = "zeta=" + std::to_string(zd) + ",chi=" + std::to_string(e) +
                                  ",c=" + std::to_string(ce);
                ir.add("irreducible " + tag, irreducibility_check(rep));
                auto [sign, w] = parity_closed_form(cx, dp);
                (void)sign;
                ir.add("z in H " + tag, in_H(cx, dp, w.z));
            }
            if (!ir.ok()) ok = false;
            emit_report(ir, cfg, out);
        } catch (const std::exception& ex) {
            err << "error: " << case_name(kind) << " q=" << cx.q << " n=" << n << ": " << ex.what()
                << "\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

int cmd_dieudonne(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = true;
    for (auto [kind, arg, n] : combos(cfg, err)) {
        try {
            LocalContext cx = context_for(kind, arg, n, cfg);
            Report r0 = formal_module_endo_check(cx.tower(), cx.lv_qn,
                                                 cx.tower().info(cx.lv_q).degree, cx.n);
            r0.title += " (q=" + std::to_string(cx.q) + ", n=" + std::to_string(n) + ")";
            if (!r0.ok()) ok = false;
            emit_report(r0, cfg, out);
            Report r1 = check_endo_relations(cx);
            if (!r1.ok()) ok = false;
            emit_report(r1, cfg, out);
            Report r2 = verify_eqchar(cx);
            if (!r2.ok()) ok = false;
            emit_report(r2, cfg, out);
            if (kind == Case::unramified) {
                Report r3 = verify_unramified_iota(cx);
                if (!r3.ok()) ok = false;
                emit_report(r3, cfg, out);
            }
            if (kind == Case::ramified) {
                Report r3 = verify_ramified_iota(cx, make_twist(cx).beta);
                if (!r3.ok()) ok = false;
                emit_report(r3, cfg, out);
            }
        } catch (const std::exception& ex) {
            err << "error: " << case_name(kind) << " q/q'=" << arg << " n=" << n << ": "
                << ex.what() << "\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

int cmd_framework(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = true;
    try {
        std::vector<GroupModel> models;
        models.push_back(model_cyclic(4, true));
        models.push_back(model_s3());
        models.push_back(model_q8());
        for (const auto& m : models) {
            Report v = validate_model(m);
            if (!v.ok()) ok = false;
            emit_report(v, cfg, out);
            Report r = check_framework(m);
            if (!r.ok()) ok = false;
            emit_report(r, cfg, out);
        }
        Report pr = check_framework_product(models[0], models[1]);
        if (!pr.ok()) ok = false;
        emit_report(pr, cfg, out);
        Report pr2 = check_framework_product(models[2], models[1]);
        if (!pr2.ok()) ok = false;
        emit_report(pr2, cfg, out);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        ok = false;
    }
    return ok ? 0 : 1;
}

int cmd_tower(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    for (auto [kind, arg, n] : combos(cfg, err)) {
        LocalContext cx = context_for(kind, arg, n, cfg);
        nlohmann::json j{{"schema", kReportSchemaVersion},
                         {"case", case_name(kind)},
                         {"q", cx.q},
                         {"qprime", cx.qprime},
                         {"n", cx.n},
                         {"m", cx.m},
                         {"cyclotomic_modulus", cx.cyclo_modulus},
                         {"tower", cx.tower().describe()}};
        out << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace csd

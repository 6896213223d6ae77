#include "csd/division_algebra.hpp"

#include <sstream>

namespace csd {

const char* case_name(Case c) {
    switch (c) {
        case Case::split: return "split";
        case Case::unramified: return "unramified";
        case Case::ramified: return "ramified";
    }
    return "?";
}

std::optional<Case> case_from_name(const std::string& s) {
    if (s == "split") return Case::split;
    if (s == "unramified") return Case::unramified;
    if (s == "ramified") return Case::ramified;
    return std::nullopt;
}

namespace {
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }
}  // namespace

LocalContext make_context(Case kind, std::uint64_t q_or_qprime, unsigned n, unsigned m,
                          unsigned c_order) {
    if (n < 1) throw domain_error("make_context: n must be >= 1");
    if (m < 2) throw domain_error("make_context: truncation length must be >= 2");
    auto fac = factorize(q_or_qprime);
    if (fac.size() != 1) throw domain_error("make_context: q must be a prime power");
    LocalContext cx;
    cx.kind = kind;
    cx.n = n;
    cx.m = m;
    cx.p = fac[0].first;
    unsigned e = fac[0].second;
    std::vector<unsigned> degs;
    if (kind == Case::unramified) {
        cx.qprime = q_or_qprime;
        cx.q = q_or_qprime * q_or_qprime;
        degs = {1, e, 2 * e, 2 * e * n, 4 * e * n};
    } else {
        if (kind == Case::ramified && cx.p == 2)
            throw domain_error("make_context: the ramified case requires p != 2");
        cx.q = q_or_qprime;
        cx.qprime = q_or_qprime;
        degs = {1, e, e * n, 2 * e * n};
    }
    cx.tower_ptr = std::make_shared<Tower>(static_cast<unsigned>(cx.p), degs);
    const Tower& t = *cx.tower_ptr;
    cx.lv_p = t.level_of_degree(1);
    cx.lv_qp = t.level_of_degree(e);
    cx.lv_q = t.level_of_degree(kind == Case::unramified ? 2 * e : e);
    cx.lv_qn = t.level_of_degree(kind == Case::unramified ? 2 * e * n : e * n);
    cx.lv_q2n = t.level_of_degree(kind == Case::unramified ? 4 * e * n : 2 * e * n);
    std::uint64_t co = c_order ? c_order : lcm_u64(4, cx.q - 1);
    cx.cyclo_modulus = static_cast<unsigned>(lcm_u64(lcm_u64(cx.p, cx.q - 1), lcm_u64(4, co)));
    return cx;
}

// ---------------------------------------------------------------------------
// D^x arithmetic

namespace {

// truncated Ore product of unit parts: w_s = sum_{i+j=s} u_i sigma^i(v_j)
std::vector<TowerElem> unit_mul(const LocalContext& cx, const std::vector<TowerElem>& u,
                                const std::vector<TowerElem>& v) {
    const Tower& t = cx.tower();
    std::vector<TowerElem> w(cx.m, t.zero(cx.lv_qn));
    for (unsigned i = 0; i < cx.m; ++i) {
        if (t.is_zero(u[i])) continue;
        for (unsigned j = 0; i + j < cx.m; ++j)
            w[i + j] = t.add(w[i + j], t.mul(u[i], cx.sigma(v[j], static_cast<long>(i))));
    }
    return w;
}

std::vector<TowerElem> unit_inv(const LocalContext& cx, const std::vector<TowerElem>& u) {
    const Tower& t = cx.tower();
    std::vector<TowerElem> w(cx.m, t.zero(cx.lv_qn));
    TowerElem i0 = t.inv(u[0]);
    w[0] = i0;
    for (unsigned s = 1; s < cx.m; ++s) {
        TowerElem acc = t.zero(cx.lv_qn);
        for (unsigned i = 1; i <= s; ++i)
            acc = t.add(acc, t.mul(u[i], cx.sigma(w[s - i], static_cast<long>(i))));
        w[s] = t.neg(t.mul(i0, acc));
    }
    return w;
}

std::vector<TowerElem> unit_sigma(const LocalContext& cx, const std::vector<TowerElem>& u, long r) {
    std::vector<TowerElem> w = u;
    for (auto& c : w) c = cx.sigma(c, r);
    return w;
}

}  // namespace

DElement d_one(const LocalContext& cx) { return d_teich(cx, cx.tower().one(cx.lv_qn)); }

DElement d_pi(const LocalContext& cx) {
    DElement x;
    x.val = 1;
    x.u.assign(cx.m, cx.tower().zero(cx.lv_qn));
    x.u[0] = cx.tower().one(cx.lv_qn);
    return x;
}

DElement d_teich(const LocalContext& cx, const TowerElem& a) {
    const Tower& t = cx.tower();
    TowerElem a0 = t.embed(a, cx.lv_qn);
    if (t.is_zero(a0)) throw domain_error("d_teich: zero is not a unit");
    DElement x;
    x.val = 0;
    x.u.assign(cx.m, t.zero(cx.lv_qn));
    x.u[0] = a0;
    return x;
}

DElement d_one_plus_pi(const LocalContext& cx, const TowerElem& d) {
    const Tower& t = cx.tower();
    DElement x = d_one(cx);
    if (cx.m >= 2) x.u[1] = cx.sigma(t.embed(d, cx.lv_qn), 1);  // Pi [d] = sigma(d) Pi
    return x;
}

DElement d_make(const LocalContext& cx, long val, std::vector<TowerElem> unit) {
    const Tower& t = cx.tower();
    DElement x;
    x.val = val;
    x.u.assign(cx.m, t.zero(cx.lv_qn));
    for (size_t i = 0; i < unit.size() && i < cx.m; ++i) x.u[i] = t.embed(unit[i], cx.lv_qn);
    if (t.is_zero(x.u[0])) throw domain_error("d_make: unit part must have nonzero constant term");
    return x;
}

DElement d_mul(const LocalContext& cx, const DElement& x, const DElement& y) {
    // Pi^k u Pi^l v = Pi^{k+l} sigma^{-l}(u) v
    DElement r;
    r.val = x.val + y.val;
    r.u = unit_mul(cx, unit_sigma(cx, x.u, -y.val), y.u);
    return r;
}

DElement d_inv(const LocalContext& cx, const DElement& x) {
    DElement r;
    r.val = -x.val;
    r.u = unit_sigma(cx, unit_inv(cx, x.u), x.val);
    return r;
}

DElement d_pow(const LocalContext& cx, const DElement& x, long e) {
    DElement base = e < 0 ? d_inv(cx, x) : x;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    DElement acc = d_one(cx);
    while (ue > 0) {
        if (ue & 1) acc = d_mul(cx, acc, base);
        base = d_mul(cx, base, base);
        ue >>= 1;
    }
    return acc;
}

std::string d_str(const LocalContext& cx, const DElement& x) {
    std::ostringstream os;
    os << "Pi^" << x.val << "*(";
    for (unsigned i = 0; i < cx.m; ++i) {
        if (i) os << ",";
        os << cx.tower().encoding(x.u[i]);
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// twist pairs

TwistData make_twist(const LocalContext& cx) {
    switch (cx.kind) {
        case Case::split: {
            TwistData tw;
            tw.kind = Case::split;
            tw.t = d_one(cx);
            return tw;
        }
        case Case::unramified: {
            TwistData tw;
            tw.kind = Case::unramified;
            tw.t = d_pi(cx);
            return tw;
        }
        case Case::ramified: {
            const Tower& t = cx.tower();
            TowerElem beta =
                t.solve_power(t.minus_one(cx.lv_q2n), pow_u64(cx.q, cx.n) - 1);
            return make_twist_with_beta(cx, beta);
        }
    }
    throw domain_error("make_twist: bad case");
}

TwistData make_twist_with_beta(const LocalContext& cx, const TowerElem& beta) {
    if (cx.kind != Case::ramified) throw domain_error("make_twist_with_beta: ramified only");
    const Tower& t = cx.tower();
    std::uint64_t qn1 = pow_u64(cx.q, cx.n) - 1;
    if (t.pow(beta, static_cast<std::int64_t>(qn1)) != t.minus_one(cx.lv_q2n))
        throw domain_error("make_twist_with_beta: beta^{q^n-1} != -1");
    TwistData tw;
    tw.kind = Case::ramified;
    tw.beta = beta;
    tw.alpha = t.section_or_throw(t.pow(beta, static_cast<std::int64_t>(cx.q - 1)), cx.lv_qn,
                                  "alpha = beta^{q-1} must lie in F_{q^n}");
    if (t.norm_to(tw.alpha, cx.lv_q) != t.minus_one(cx.lv_q))
        throw model_error("make_twist_with_beta: Nr(alpha) != -1");
    TowerElem tres = t.section_or_throw(t.pow(beta, -2), cx.lv_qn,
                                        "beta^{-2} must lie in F_{q^n}");
    tw.t = d_teich(cx, tres);
    return tw;
}

TwistData make_twist_canonical_odd(const LocalContext& cx) {
    if (cx.kind != Case::ramified || cx.n % 2 == 0)
        throw domain_error("make_twist_canonical_odd: ramified with n odd only");
    const Tower& t = cx.tower();
    TowerElem eps = t.gen(cx.lv_q);  // smallest-dlog nonsquare
    TowerElem eta = t.solve_power(t.inv(t.embed(eps, cx.lv_q2n)), 2);
    return make_twist_with_beta(cx, eta);
}

std::vector<TowerElem> all_valid_betas(const LocalContext& cx) {
    if (cx.kind != Case::ramified) throw domain_error("all_valid_betas: ramified only");
    const Tower& t = cx.tower();
    return t.solve_power_all(t.minus_one(cx.lv_q2n), pow_u64(cx.q, cx.n) - 1);
}

DElement tau_apply(const LocalContext& cx, const TwistData& tw, const DElement& x) {
    const Tower& t = cx.tower();
    switch (tw.kind) {
        case Case::split:
            return x;
        case Case::unramified: {
            DElement y = x;
            for (auto& c : y.u) c = cx.tau_res(c, 1);
            return y;
        }
        case Case::ramified: {
            // tau fixes the residue coefficients and sends Pi^s to nu_s Pi^s,
            // nu_s = prod_{j=0}^{s-1} sigma^j(alpha) (extended to s < 0)
            DElement y = x;
            long k = x.val;
            for (unsigned i = 0; i < cx.m; ++i) {
                long s = k + static_cast<long>(i);
                TowerElem nu = t.one(cx.lv_qn);
                if (s >= 0) {
                    for (long j = 0; j < s; ++j) nu = t.mul(nu, cx.sigma(tw.alpha, j));
                } else {
                    for (long j = s; j < 0; ++j) nu = t.mul(nu, cx.sigma(tw.alpha, j));
                    nu = t.inv(nu);
                }
                y.u[i] = t.mul(x.u[i], cx.sigma(nu, -k));
            }
            return y;
        }
    }
    throw domain_error("tau_apply: bad case");
}

Report check_twist_axioms(const LocalContext& cx, const TwistData& tw) {
    Report rep;
    rep.title = std::string("twist axioms (") + case_name(cx.kind) + ")";
    const Tower& t = cx.tower();
    std::vector<std::pair<std::string, DElement>> gens;
    gens.emplace_back("teich generator", d_teich(cx, t.gen(cx.lv_qn)));
    gens.emplace_back("Pi", d_pi(cx));
    for (unsigned i = 0; i < t.info(cx.lv_qn).degree; ++i) {
        TowerElem d = t.zero(cx.lv_qn);
        d.c[i] = 1;
        gens.emplace_back("1+Pi[basis " + std::to_string(i) + "]", d_one_plus_pi(cx, d));
    }
    DElement ti = d_inv(cx, tw.t);
    for (const auto& [name, g] : gens) {
        DElement lhs = tau_apply(cx, tw, tau_apply(cx, tw, g));
        DElement rhs = d_mul(cx, d_mul(cx, tw.t, g), ti);
        rep.add("tau^2 = Int(t) on " + name, lhs == rhs);
    }
    rep.add("tau(t) = t", tau_apply(cx, tw, tw.t) == tw.t);
    return rep;
}

// ---------------------------------------------------------------------------
// simple supercuspidal parameters on the D side

SscParamsD make_ssc_d(const LocalContext& cx, const TowerElem& zeta, std::uint64_t chi_exp,
                      long c_order, long c_exp) {
    const Tower& t = cx.tower();
    std::uint64_t idx = (pow_u64(cx.q, cx.n) - 1) / (cx.q - 1);
    TowerElem xi = t.solve_power(t.embed(zeta, cx.lv_qn), idx);
    return make_ssc_d_with_xi(cx, zeta, chi_exp, c_order, c_exp, xi);
}

SscParamsD make_ssc_d_with_xi(const LocalContext& cx, const TowerElem& zeta, std::uint64_t chi_exp,
                              long c_order, long c_exp, const TowerElem& xi) {
    const Tower& t = cx.tower();
    if (t.is_zero(zeta)) throw domain_error("make_ssc_d: zeta must be a unit");
    if (c_order < 1) throw domain_error("make_ssc_d: c must be a root of unity");
    SscParamsD pr;
    pr.zeta = zeta;
    pr.chi = MultChar{cx.lv_q, chi_exp % (cx.q - 1)};
    pr.c_order = c_order;
    pr.c_exp = c_exp;
    pr.c = Cyclo::root_of_unity(static_cast<unsigned>(c_order), c_exp);
    if (t.norm_to(xi, cx.lv_q) != zeta) throw domain_error("make_ssc_d: Nr(xi) != zeta");
    pr.xi = xi;
    pr.b = d_teich(cx, xi);
    return pr;
}

namespace {

// h (bPi)^{-val(h)}: the valuation-0 part of h relative to the bPi-line
DElement strip_bpi(const LocalContext& cx, const SscParamsD& pr, const DElement& h) {
    DElement bpi = d_mul(cx, pr.b, d_pi(cx));
    return d_mul(cx, h, d_pow(cx, bpi, -h.val));
}

}  // namespace

bool in_H(const LocalContext& cx, const SscParamsD& pr, const DElement& h) {
    DElement r = strip_bpi(cx, pr, h);
    return cx.tower().in_subfield(r.u[0], cx.lv_q);
}

Cyclo lambda_d(const LocalContext& cx, const SscParamsD& pr, const DElement& h) {
    const Tower& t = cx.tower();
    DElement r = strip_bpi(cx, pr, h);
    if (!t.in_subfield(r.u[0], cx.lv_q))
        throw domain_error("lambda_d: element is not in H^D_xi");
    TowerElem xbar = t.section_or_throw(r.u[0], cx.lv_q, "H factorization");
    Cyclo val = char_eval(t, pr.chi, xbar);
    val = val * pr.c.pow(h.val);
    // residual 1 + bPi d part: dbar = sigma^{-1}((r_1/r_0)/xi); psi(Tr) is sigma-invariant
    TowerElem y = t.mul(t.div(r.u[1], r.u[0]), t.inv(pr.xi));
    TowerElem tr = t.trace_to(y, cx.lv_q);
    val = val * char_eval(t, AddChar{cx.lv_q}, tr);
    return val;
}

Cyclo lambda_d_degenerate(const LocalContext& cx, const SscParamsD& pr, const DElement& h) {
    const Tower& t = cx.tower();
    DElement r = strip_bpi(cx, pr, h);
    if (!t.in_subfield(r.u[0], cx.lv_q))
        throw domain_error("lambda_d_degenerate: element is not in H^D_xi");
    TowerElem xbar = t.section_or_throw(r.u[0], cx.lv_q, "H factorization");
    return char_eval(t, pr.chi, xbar) * pr.c.pow(h.val);
}

DElement coset_rep(const LocalContext& cx, unsigned i) {
    const Tower& t = cx.tower();
    return d_teich(cx, t.pow(t.gen(cx.lv_qn), static_cast<std::int64_t>(i)));
}

std::pair<unsigned, Cyclo> coset_action(const LocalContext& cx, const SscParamsD& pr, unsigned i,
                                        const DElement& g) {
    const Tower& t = cx.tower();
    std::uint64_t d = cx.rep_dim();
    DElement x = d_mul(cx, coset_rep(cx, i), g);
    DElement r = strip_bpi(cx, pr, x);
    // u_j is pulled left through (bPi)^{-k}, which twists its residue by sigma^k
    unsigned j = static_cast<unsigned>(t.dlog(cx.sigma(r.u[0], -x.val)) % d);
    DElement h = d_mul(cx, x, d_inv(cx, coset_rep(cx, j)));
    try {
        return {j, lambda_d(cx, pr, h)};
    } catch (const domain_error&) {
        throw model_error("coset_action: no coset matched (model bug)");
    }
}

}  // namespace csd

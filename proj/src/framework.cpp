#include "csd/framework.hpp"

namespace csd {

namespace {

CMat cmat_identity(unsigned d) {
    CMat m(d, std::vector<Cyclo>(d, Cyclo::zero()));
    for (unsigned i = 0; i < d; ++i) m[i][i] = Cyclo::one();
    return m;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
    size_t n = a.size(), k = b.size(), c = b[0].size();
    CMat r(n, std::vector<Cyclo>(c, Cyclo::zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < c; ++l) {
                if (b[j][l].is_zero()) continue;
                r[i][l] = r[i][l] + a[i][j] * b[j][l];
            }
        }
    return r;
}

bool cmat_equal(const CMat& a, const CMat& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    return true;
}

Cyclo cmat_trace(const CMat& a) {
    Cyclo t = Cyclo::zero();
    for (size_t i = 0; i < a.size(); ++i) t = t + a[i][i];
    return t;
}

CMat kron(const CMat& a, const CMat& b) {
    size_t da = a.size(), db = b.size();
    CMat r(da * db, std::vector<Cyclo>(da * db, Cyclo::zero()));
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < da; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t k = 0; k < db; ++k)
                for (size_t l = 0; l < db; ++l)
                    r[i * db + k][j * db + l] = a[i][j] * b[k][l];
        }
    return r;
}

void finish_group(FiniteGroup& g) {
    g.inv.assign(g.order, 0);
    for (unsigned a = 0; a < g.order; ++a)
        for (unsigned b = 0; b < g.order; ++b)
            if (g.mul[a][b] == g.e) g.inv[a] = b;
}

}  // namespace

GroupModel model_cyclic(unsigned n, bool tau_inversion) {
    GroupModel m;
    m.g.name = "C" + std::to_string(n) + (tau_inversion ? "/inv" : "");
    m.g.order = n;
    m.g.e = 0;
    m.g.mul.assign(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) m.g.mul[a][b] = (a + b) % n;
    finish_group(m.g);
    m.tw.t = 0;
    m.tw.tau.resize(n);
    for (unsigned a = 0; a < n; ++a) m.tw.tau[a] = tau_inversion ? (n - a) % n : a;
    for (unsigned j = 0; j < n; ++j) {
        MatRep r;
        r.name = "chi" + std::to_string(j);
        r.dim = 1;
        for (unsigned k = 0; k < n; ++k)
            r.mats.push_back({{Cyclo::root_of_unity(n, static_cast<long long>(j) * k)}});
        m.reps.push_back(std::move(r));
    }
    return m;
}

GroupModel model_s3() {
    // permutations of {0,1,2} in a fixed order
    std::vector<std::array<unsigned, 3>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                               {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    GroupModel m;
    m.g.name = "S3";
    m.g.order = 6;
    m.g.e = 0;
    m.g.mul.assign(6, std::vector<unsigned>(6));
    auto compose = [&](unsigned a, unsigned b) {
        std::array<unsigned, 3> c{};
        for (unsigned i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        for (unsigned k = 0; k < 6; ++k)
            if (perms[k] == c) return k;
        throw model_error("model_s3: composition escaped the table");
    };
    for (unsigned a = 0; a < 6; ++a)
        for (unsigned b = 0; b < 6; ++b) m.g.mul[a][b] = compose(a, b);
    finish_group(m.g);
    m.tw.t = 0;
    m.tw.tau.resize(6);
    for (unsigned a = 0; a < 6; ++a) m.tw.tau[a] = a;

    MatRep triv{"trivial", 1, {}}, sgn{"sign", 1, {}}, std2{"standard", 2, {}};
    for (unsigned a = 0; a < 6; ++a) {
        triv.mats.push_back({{Cyclo::one()}});
        // parity of the permutation
        int swaps = 0;
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j)
                if (perms[a][i] > perms[a][j]) ++swaps;
        sgn.mats.push_back({{Cyclo::integer(swaps % 2 == 0 ? 1 : -1)}});
        // action on the sum-zero plane with basis v1 = e0 - e1, v2 = e1 - e2
        auto col = [&](unsigned from, unsigned to_minus) {
            // image of e_{from} - e_{to_minus}: coefficients (w_0, -w_2) in (v1, v2)
            int w[3] = {0, 0, 0};
            w[perms[a][from]] += 1;
            w[perms[a][to_minus]] -= 1;
            return std::pair<int, int>(w[0], -w[2]);
        };
        auto [c11, c21] = col(0, 1);
        auto [c12, c22] = col(1, 2);
        std2.mats.push_back({{Cyclo::integer(c11), Cyclo::integer(c12)},
                             {Cyclo::integer(c21), Cyclo::integer(c22)}});
    }
    m.reps = {triv, sgn, std2};
    return m;
}

GroupModel model_q8() {
    // elements: +-1, +-i, +-j, +-k via the faithful 2-dim matrices over Q(i)
    Cyclo I = Cyclo::root_of_unity(4, 1), one = Cyclo::one(), zero = Cyclo::zero();
    CMat m1{{one, zero}, {zero, one}};
    CMat mi{{I, zero}, {zero, -I}};
    CMat mj{{zero, -one}, {one, zero}};
    CMat mk = cmat_mul(mi, mj);
    auto neg = [](const CMat& a) {
        CMat r = a;
        for (auto& row : r)
            for (auto& x : row) x = -x;
        return r;
    };
    std::vector<CMat> mats{m1, neg(m1), mi, neg(mi), mj, neg(mj), mk, neg(mk)};
    GroupModel m;
    m.g.name = "Q8";
    m.g.order = 8;
    m.g.e = 0;
    m.g.mul.assign(8, std::vector<unsigned>(8));
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b) {
            CMat p = cmat_mul(mats[a], mats[b]);
            unsigned idx = 9;
            for (unsigned k = 0; k < 8; ++k)
                if (cmat_equal(p, mats[k])) idx = k;
            if (idx == 9) throw model_error("model_q8: product escaped the table");
            m.g.mul[a][b] = idx;
        }
    finish_group(m.g);
    m.tw.t = 0;
    m.tw.tau.resize(8);
    for (unsigned a = 0; a < 8; ++a) m.tw.tau[a] = a;

    // 1-dims factor through Q8/{+-1} = V4 with classes 1, i, j, k = (a/2)
    for (unsigned si = 0; si < 2; ++si)
        for (unsigned sj = 0; sj < 2; ++sj) {
            MatRep r;
            r.name = "chi_" + std::to_string(si) + std::to_string(sj);
            r.dim = 1;
            for (unsigned a = 0; a < 8; ++a) {
                unsigned cls = a / 2;  // 0: +-1, 1: +-i, 2: +-j, 3: +-k
                int v = 1;
                if (cls == 1 && si) v = -v;
                if (cls == 2 && sj) v = -v;
                if (cls == 3 && (si ^ sj)) v = -v;
                r.mats.push_back({{Cyclo::integer(v)}});
            }
            m.reps.push_back(std::move(r));
        }
    MatRep two{"faithful2", 2, mats};
    m.reps.push_back(std::move(two));
    return m;
}

GroupModel model_product(const GroupModel& m1, const GroupModel& m2) {
    GroupModel m;
    unsigned n1 = m1.g.order, n2 = m2.g.order;
    m.g.name = m1.g.name + "x" + m2.g.name;
    m.g.order = n1 * n2;
    m.g.e = m1.g.e * n2 + m2.g.e;
    m.g.mul.assign(m.g.order, std::vector<unsigned>(m.g.order));
    for (unsigned a1 = 0; a1 < n1; ++a1)
        for (unsigned a2 = 0; a2 < n2; ++a2)
            for (unsigned b1 = 0; b1 < n1; ++b1)
                for (unsigned b2 = 0; b2 < n2; ++b2)
                    m.g.mul[a1 * n2 + a2][b1 * n2 + b2] =
                        m1.g.mul[a1][b1] * n2 + m2.g.mul[a2][b2];
    finish_group(m.g);
    m.tw.t = m1.tw.t * n2 + m2.tw.t;
    m.tw.tau.resize(m.g.order);
    for (unsigned a1 = 0; a1 < n1; ++a1)
        for (unsigned a2 = 0; a2 < n2; ++a2)
            m.tw.tau[a1 * n2 + a2] = m1.tw.tau[a1] * n2 + m2.tw.tau[a2];
    for (const auto& r1 : m1.reps)
        for (const auto& r2 : m2.reps) {
            MatRep r;
            r.name = r1.name + "(x)" + r2.name;
            r.dim = r1.dim * r2.dim;
            for (unsigned a1 = 0; a1 < n1; ++a1)
                for (unsigned a2 = 0; a2 < n2; ++a2)
                    r.mats.push_back(kron(r1.mats[a1], r2.mats[a2]));
            m.reps.push_back(std::move(r));
        }
    return m;
}

Report validate_model(const GroupModel& m) {
    Report rep;
    rep.title = "group model " + m.g.name;
    const FiniteGroup& g = m.g;
    bool assoc = true, ident = true, invs = true;
    for (unsigned a = 0; a < g.order; ++a) {
        if (g.mul[g.e][a] != a || g.mul[a][g.e] != a) ident = false;
        if (g.mul[a][g.inv[a]] != g.e || g.mul[g.inv[a]][a] != g.e) invs = false;
        for (unsigned b = 0; b < g.order; ++b)
            for (unsigned c = 0; c < g.order; ++c)
                if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) assoc = false;
    }
    rep.add("associativity", assoc);
    rep.add("identity and inverses", ident && invs);
    bool tau_hom = true;
    for (unsigned a = 0; a < g.order; ++a)
        for (unsigned b = 0; b < g.order; ++b)
            if (m.tw.tau[g.mul[a][b]] != g.mul[m.tw.tau[a]][m.tw.tau[b]]) tau_hom = false;
    rep.add("tau is a homomorphism", tau_hom);
    bool tau_sq = true;
    for (unsigned a = 0; a < g.order; ++a)
        if (m.tw.tau[m.tw.tau[a]] != g.mul[g.mul[m.tw.t][a]][g.inv[m.tw.t]]) tau_sq = false;
    rep.add("tau^2 = Int(t)", tau_sq);
    rep.add("tau(t) = t", m.tw.tau[m.tw.t] == m.tw.t);

    unsigned dimsq = 0;
    for (const auto& r : m.reps) {
        bool hom = true;
        for (unsigned a = 0; a < g.order; ++a)
            for (unsigned b = 0; b < g.order; ++b)
                if (!cmat_equal(cmat_mul(r.mats[a], r.mats[b]), r.mats[g.mul[a][b]])) hom = false;
        rep.add(r.name + " is a homomorphism", hom && cmat_equal(r.mats[g.e], cmat_identity(r.dim)));
        Cyclo s = Cyclo::zero();
        for (unsigned a = 0; a < g.order; ++a)
            s = s + cmat_trace(r.mats[a]) * cmat_trace(r.mats[g.inv[a]]);
        rep.add(r.name + " is irreducible (sum |tr|^2 = |G|)",
                s == Cyclo::integer(static_cast<long>(g.order)));
        dimsq += r.dim * r.dim;
    }
    rep.add("sum of dim^2 equals |G|", dimsq == g.order);
    return rep;
}

std::optional<CMat> invariant_pairing(const GroupModel& m, const MatRep& rep,
                                      const GroupTwist& tw) {
    unsigned d = rep.dim;
    size_t nvar = static_cast<size_t>(d) * d;
    CMat rows;
    for (unsigned gi = 0; gi < m.g.order; ++gi) {
        const CMat& pg = rep.mats[gi];
        const CMat& pt = rep.mats[tw.tau[gi]];
        // pi(tau g)^T B pi(g) = B, entry (a, b)
        for (unsigned a = 0; a < d; ++a)
            for (unsigned b = 0; b < d; ++b) {
                std::vector<Cyclo> row(nvar, Cyclo::zero());
                for (unsigned k = 0; k < d; ++k)
                    for (unsigned l = 0; l < d; ++l) {
                        if (pt[k][a].is_zero() || pg[l][b].is_zero()) continue;
                        size_t idx = static_cast<size_t>(k) * d + l;
                        row[idx] = row[idx] + pt[k][a] * pg[l][b];
                    }
                size_t ab = static_cast<size_t>(a) * d + b;
                row[ab] = row[ab] - Cyclo::one();
                rows.push_back(std::move(row));
            }
    }
    auto basis = cyclo_nullspace(std::move(rows), nvar);
    if (basis.empty()) return std::nullopt;
    if (basis.size() > 1)
        throw model_error("invariant_pairing: solution space has dimension " +
                          std::to_string(basis.size()) + " for irreducible " + rep.name);
    CMat B(d, std::vector<Cyclo>(d, Cyclo::zero()));
    Cyclo norm = Cyclo::one();
    for (size_t i = 0; i < nvar; ++i)
        if (!basis[0][i].is_zero()) {
            norm = basis[0][i].inv();
            break;
        }
    for (unsigned k = 0; k < d; ++k)
        for (unsigned l = 0; l < d; ++l) B[k][l] = basis[0][static_cast<size_t>(k) * d + l] * norm;
    if (cyclo_det(B).is_zero()) throw model_error("invariant_pairing: degenerate form");
    return B;
}

int rep_parity(const MatRep& rep, const GroupTwist& tw, const CMat& B) {
    unsigned d = rep.dim;
    const CMat& pt = rep.mats[tw.t];
    std::optional<Cyclo> c;
    for (unsigned a = 0; a < d; ++a)
        for (unsigned b = 0; b < d; ++b) {
            Cyclo lhs = Cyclo::zero();
            for (unsigned k = 0; k < d; ++k)
                if (!pt[k][a].is_zero()) lhs = lhs + pt[k][a] * B[k][b];
            const Cyclo& rhs = B[b][a];
            if (rhs.is_zero()) {
                if (!lhs.is_zero()) throw model_error("rep_parity: support mismatch");
                continue;
            }
            Cyclo ratio = lhs * rhs.inv();
            if (!c)
                c = ratio;
            else if (*c != ratio)
                throw model_error("rep_parity: no global scalar");
        }
    if (!c) throw model_error("rep_parity: B is zero");
    return c->as_sign();
}

int fs_indicator(const GroupModel& m, const MatRep& rep) {
    Cyclo s = Cyclo::zero();
    for (unsigned a = 0; a < m.g.order; ++a) s = s + cmat_trace(rep.mats[m.g.mul[a][a]]);
    auto r = s.as_rational();
    if (!r) throw model_error("fs_indicator: non-rational sum");
    Rat v = *r / Rat(m.g.order);
    if (v == 0) return 0;
    if (v == 1) return 1;
    if (v == -1) return -1;
    throw model_error("fs_indicator: indicator outside {-1, 0, 1}");
}

Report check_framework(const GroupModel& m) {
    Report rep;
    rep.title = "framework on " + m.g.name;
    bool tau_trivial = m.tw.t == m.g.e;
    for (unsigned a = 0; a < m.g.order && tau_trivial; ++a)
        if (m.tw.tau[a] != a) tau_trivial = false;

    for (const auto& r : m.reps) {
        auto B = invariant_pairing(m, r, m.tw);
        if (B) {
            int c = rep_parity(r, m.tw, *B);  // as_sign enforces C in {+-1}
            rep.add(r.name + " parity is a sign", true, c > 0 ? "+1" : "-1");

            // Lemma change-tau: parity is invariant under tau' = Int(h) tau, t' = h tau(h) t
            bool change_ok = true;
            for (unsigned h = 0; h < m.g.order; ++h) {
                GroupTwist tw2;
                tw2.tau.resize(m.g.order);
                for (unsigned a = 0; a < m.g.order; ++a)
                    tw2.tau[a] = m.g.mul[m.g.mul[h][m.tw.tau[a]]][m.g.inv[h]];
                tw2.t = m.g.mul[m.g.mul[h][m.tw.tau[h]]][m.tw.t];
                auto B2 = invariant_pairing(m, r, tw2);
                if (!B2 || rep_parity(r, tw2, *B2) != c) change_ok = false;
            }
            rep.add(r.name + " change-of-(tau,t) invariance", change_ok);

            if (r.dim == 1)
                rep.add(r.name + " 1-dim rule C = pi(t)",
                        r.mats[m.tw.t][0][0] == Cyclo::integer(c));

            // det-parity: C_{det pi} = C^dim
            {
                MatRep det;
                det.name = r.name + "-det";
                det.dim = 1;
                for (unsigned a = 0; a < m.g.order; ++a) det.mats.push_back({{cyclo_det(r.mats[a])}});
                auto Bd = invariant_pairing(m, det, m.tw);
                bool ok = Bd.has_value();
                if (ok) {
                    int cd = rep_parity(det, m.tw, *Bd);
                    ok = cd == (r.dim % 2 == 0 ? 1 : c);
                }
                rep.add(r.name + " det-parity C_det = C^dim", ok);
            }

            if (tau_trivial)
                rep.add(r.name + " matches the Frobenius-Schur indicator",
                        fs_indicator(m, r) == c);
        } else {
            rep.add(r.name + " has no invariant pairing (not conjugate self-dual)", true);
            if (tau_trivial)
                rep.add(r.name + " FS indicator vanishes", fs_indicator(m, r) == 0);
        }
    }
    return rep;
}

Report check_framework_product(const GroupModel& m1, const GroupModel& m2) {
    Report rep;
    rep.title = "product multiplicativity " + m1.g.name + " x " + m2.g.name;
    GroupModel mp = model_product(m1, m2);
    for (size_t i1 = 0; i1 < m1.reps.size(); ++i1)
        for (size_t i2 = 0; i2 < m2.reps.size(); ++i2) {
            auto B1 = invariant_pairing(m1, m1.reps[i1], m1.tw);
            auto B2 = invariant_pairing(m2, m2.reps[i2], m2.tw);
            const MatRep& rp = mp.reps[i1 * m2.reps.size() + i2];
            auto Bp = invariant_pairing(mp, rp, mp.tw);
            if (B1 && B2) {
                bool ok = Bp.has_value() &&
                          rep_parity(rp, mp.tw, *Bp) ==
                              rep_parity(m1.reps[i1], m1.tw, *B1) *
                                  rep_parity(m2.reps[i2], m2.tw, *B2);
                rep.add(rp.name + " C = C1*C2", ok);
            }
        }
    return rep;
}

}  // namespace csd

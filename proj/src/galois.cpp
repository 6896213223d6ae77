#include "csd/galois.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace csd {

namespace {

// Dense construction-time polynomials over F_p (ascending coefficients).
using PPoly = std::vector<unsigned>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmod(PPoly a, const PPoly& m, unsigned p) {
    // m monic
    ptrim(a);
    while (a.size() >= m.size()) {
        unsigned c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + static_cast<std::uint64_t>(c) * (p - m[i] % p)) % p;
        ptrim(a);
    }
    return a;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, unsigned p) {
    if (a.empty() || b.empty()) return {};
    PPoly conv(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            conv[i + j] = (conv[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    return pmod(std::move(conv), m, p);
}

PPoly ppowmod(PPoly base, std::uint64_t e, const PPoly& m, unsigned p) {
    PPoly acc{1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) acc = pmulmod(acc, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return acc;
}

unsigned inv_mod_p(unsigned a, unsigned p) {
    // p prime, a != 0
    unsigned r = 1;
    unsigned e = p - 2;
    std::uint64_t b = a % p;
    while (e > 0) {
        if (e & 1) r = static_cast<unsigned>(r * b % p);
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, unsigned p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // make b monic before reducing
        unsigned lead = b.back();
        if (lead != 1) {
            unsigned il = inv_mod_p(lead, p);
            for (unsigned& c : b) c = static_cast<unsigned>(static_cast<std::uint64_t>(c) * il % p);
        }
        a = pmod(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty() && a.back() != 1) {
        unsigned il = inv_mod_p(a.back(), p);
        for (unsigned& c : a) c = static_cast<unsigned>(static_cast<std::uint64_t>(c) * il % p);
    }
    return a;
}

bool is_irreducible(const PPoly& h, unsigned p) {
    unsigned d = static_cast<unsigned>(h.size()) - 1;
    // x^{p^d} == x mod h, and gcd(x^{p^{d/l}} - x, h) = 1 for prime l | d
    PPoly x{0, 1};
    PPoly xp = ppowmod(x, pow_u64(p, d), h, p);
    {
        PPoly diff = xp;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        ptrim(diff);
        if (!diff.empty()) return false;
    }
    for (auto [l, e] : factorize(d)) {
        (void)e;
        PPoly xl = ppowmod(x, pow_u64(p, d / static_cast<unsigned>(l)), h, p);
        xl.resize(std::max<size_t>(xl.size(), 2), 0);
        xl[1] = (xl[1] + p - 1) % p;
        ptrim(xl);
        PPoly g = pgcd(xl, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

namespace {

// Polynomials over one tower level (ascending TowerElem coefficients), used
// only for the deterministic root search during construction.
struct LevelPoly {
    std::vector<TowerElem> c;
};

void ltrim(const Tower& t, LevelPoly& f) {
    while (!f.c.empty() && t.is_zero(f.c.back())) f.c.pop_back();
}

void lmonic(const Tower& t, LevelPoly& f) {
    ltrim(t, f);
    if (f.c.empty()) return;
    TowerElem il = t.inv(f.c.back());
    for (auto& x : f.c) x = t.mul(x, il);
}

LevelPoly lmod(const Tower& t, LevelPoly a, const LevelPoly& m) {
    ltrim(t, a);
    while (a.c.size() >= m.c.size() && !a.c.empty()) {
        TowerElem q = t.mul(a.c.back(), t.inv(m.c.back()));
        size_t shift = a.c.size() - m.c.size();
        for (size_t i = 0; i < m.c.size(); ++i)
            a.c[shift + i] = t.sub(a.c[shift + i], t.mul(q, m.c[i]));
        ltrim(t, a);
    }
    return a;
}

LevelPoly lmulmod(const Tower& t, unsigned lv, const LevelPoly& a, const LevelPoly& b, const LevelPoly& m) {
    if (a.c.empty() || b.c.empty()) return {};
    LevelPoly conv;
    conv.c.assign(a.c.size() + b.c.size() - 1, t.zero(lv));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (t.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            conv.c[i + j] = t.add(conv.c[i + j], t.mul(a.c[i], b.c[j]));
    }
    return lmod(t, std::move(conv), m);
}

LevelPoly lpowmod(const Tower& t, unsigned lv, LevelPoly base, std::uint64_t e, const LevelPoly& m) {
    LevelPoly acc;
    acc.c = {t.one(lv)};
    base = lmod(t, std::move(base), m);
    while (e > 0) {
        if (e & 1) acc = lmulmod(t, lv, acc, base, m);
        base = lmulmod(t, lv, base, base, m);
        e >>= 1;
    }
    return acc;
}

LevelPoly lgcd(const Tower& t, LevelPoly a, LevelPoly b) {
    ltrim(t, a);
    ltrim(t, b);
    while (!b.c.empty()) {
        lmonic(t, b);
        a = lmod(t, std::move(a), b);
        std::swap(a, b);
    }
    lmonic(t, a);
    return a;
}

LevelPoly ldiv_exact(const Tower& t, LevelPoly num, const LevelPoly& den) {
    LevelPoly q;
    ltrim(t, num);
    if (num.c.size() >= den.c.size()) q.c.assign(num.c.size() - den.c.size() + 1, t.zero(num.c.empty() ? 0 : num.c[0].level));
    while (num.c.size() >= den.c.size() && !num.c.empty()) {
        TowerElem f = t.mul(num.c.back(), t.inv(den.c.back()));
        size_t shift = num.c.size() - den.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < den.c.size(); ++i)
            num.c[shift + i] = t.sub(num.c[shift + i], t.mul(f, den.c[i]));
        ltrim(t, num);
    }
    if (!num.c.empty()) throw model_error("Tower: inexact polynomial division during root search");
    return q;
}

// All roots in the given level of a monic squarefree polynomial that splits
// completely there. Deterministic: splitting elements are enumerated in
// encoding order, no randomness.
std::vector<TowerElem> all_roots(const Tower& t, unsigned lv, const LevelPoly& f0) {
    std::vector<TowerElem> roots;
    std::vector<LevelPoly> stack{f0};
    const std::uint64_t q = t.info(lv).size;
    while (!stack.empty()) {
        LevelPoly f = std::move(stack.back());
        stack.pop_back();
        ltrim(t, f);
        if (f.c.size() <= 1) continue;
        if (f.c.size() == 2) {
            roots.push_back(t.neg(t.mul(f.c[0], t.inv(f.c[1]))));
            continue;
        }
        bool split = false;
        for (std::uint64_t enc = 1; enc < q && !split; ++enc) {
            TowerElem a = t.from_encoding(lv, enc);
            LevelPoly g;
            if (t.p() != 2) {
                // gcd(f, (X + a)^{(q-1)/2} - 1)
                LevelPoly xa;
                xa.c = {a, t.one(lv)};
                LevelPoly pw = lpowmod(t, lv, xa, (q - 1) / 2, f);
                if (pw.c.empty()) pw.c = {t.zero(lv)};
                pw.c[0] = t.sub(pw.c[0], t.one(lv));
                g = lgcd(t, pw, f);
            } else {
                // gcd(f, Tr(aX)) with the absolute trace polynomial
                LevelPoly ax;
                ax.c = {t.zero(lv), a};
                LevelPoly term = lmod(t, ax, f);
                LevelPoly acc = term;
                for (unsigned i = 1; i < t.info(lv).degree; ++i) {
                    term = lmulmod(t, lv, term, term, f);
                    for (size_t j = 0; j < term.c.size(); ++j) {
                        if (j < acc.c.size())
                            acc.c[j] = t.add(acc.c[j], term.c[j]);
                        else
                            acc.c.push_back(term.c[j]);
                    }
                }
                g = lgcd(t, acc, f);
            }
            if (g.c.size() > 1 && g.c.size() < f.c.size()) {
                LevelPoly h = ldiv_exact(t, f, g);
                stack.push_back(std::move(g));
                stack.push_back(std::move(h));
                split = true;
            }
        }
        if (!split) throw model_error("Tower: equal-degree splitting failed");
    }
    return roots;
}

}  // namespace

Tower::Tower(unsigned p, std::vector<unsigned> degrees, std::uint64_t dlog_cap)
    : p_(p), dlog_cap_(dlog_cap) {
    if (p < 2) throw domain_error("Tower: p must be prime");
    for (auto [f, e] : factorize(p))
        if (f != p || e != 1) throw domain_error("Tower: p must be prime");
    degrees.push_back(1);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    for (size_t i = 1; i < degrees.size(); ++i)
        if (degrees[i] % degrees[i - 1] != 0)
            throw domain_error("Tower: degrees must form a divisibility chain");

    for (size_t li = 0; li < degrees.size(); ++li) {
        TowerLevelInfo info;
        info.degree = degrees[li];
        info.size = pow_u64(p_, info.degree);
        // lowest-lex irreducible modulus (base-p integer encoding of c_0..c_{d-1})
        if (info.degree == 1) {
            info.modulus = {0};
        } else {
            bool found = false;
            for (std::uint64_t enc = 0; enc < info.size && !found; ++enc) {
                PPoly h(info.degree + 1, 0);
                std::uint64_t v = enc;
                for (unsigned i = 0; i < info.degree; ++i) { h[i] = v % p_; v /= p_; }
                h[info.degree] = 1;
                if (is_irreducible(h, p_)) {
                    info.modulus.assign(h.begin(), h.end() - 1);
                    found = true;
                }
            }
            if (!found) throw model_error("Tower: no irreducible polynomial found");
        }
        info.unit_factors = factorize(info.size - 1);
        levels_.push_back(std::move(info));
        unsigned lv = static_cast<unsigned>(levels_.size()) - 1;

        // lowest-lex primitive element
        {
            TowerLevelInfo& L = levels_[lv];
            bool found = false;
            for (std::uint64_t enc = 1; enc < L.size && !found; ++enc) {
                TowerElem g = from_encoding(lv, enc);
                bool prim = true;
                for (auto [l, e] : L.unit_factors) {
                    (void)e;
                    if (pow(g, static_cast<std::int64_t>((L.size - 1) / l)) == one(lv)) {
                        prim = false;
                        break;
                    }
                }
                if (prim) {
                    L.generator = g.c;
                    found = true;
                }
            }
            if (!found) throw model_error("Tower: no primitive element found");
        }

        if (lv > 0) {
            // embedding: lexicographically smallest root of the previous modulus here
            const TowerLevelInfo& prev = levels_[lv - 1];
            LevelPoly f;
            for (unsigned mcoef : prev.modulus) f.c.push_back(from_int(lv, mcoef));
            f.c.push_back(one(lv));
            std::vector<TowerElem> roots = all_roots(*this, lv, f);
            if (roots.size() != prev.degree)
                throw model_error("Tower: embedding root count mismatch");
            std::sort(roots.begin(), roots.end(),
                      [&](const TowerElem& a, const TowerElem& b) { return encoding(a) < encoding(b); });
            levels_[lv].embed_image = roots.front().c;

            // spot-check: the embedding is a ring map commuting with Frobenius
            TowerElem ga = gen(lv - 1);
            TowerElem im = embed(ga, lv);
            if (embed(mul(ga, ga), lv) != mul(im, im) ||
                embed(add(ga, one(lv - 1)), lv) != add(im, one(lv)) ||
                embed(frobenius(ga, 1), lv) != frobenius(im, 1))
                throw model_error("Tower: embedding fails ring/Frobenius spot-check");
        }
    }
}

unsigned Tower::level_of_degree(unsigned deg) const {
    for (unsigned i = 0; i < levels_.size(); ++i)
        if (levels_[i].degree == deg) return i;
    throw domain_error("Tower::level_of_degree: no level of degree " + std::to_string(deg));
}

TowerElem Tower::from_int(unsigned lv, std::uint64_t v) const {
    TowerElem x = zero(lv);
    x.c[0] = static_cast<unsigned>(v % p_);
    return x;
}

TowerElem Tower::from_encoding(unsigned lv, std::uint64_t enc) const {
    TowerElem x = zero(lv);
    for (unsigned i = 0; i < levels_[lv].degree && enc > 0; ++i) {
        x.c[i] = static_cast<unsigned>(enc % p_);
        enc /= p_;
    }
    return x;
}

std::uint64_t Tower::encoding(const TowerElem& x) const {
    std::uint64_t v = 0;
    for (size_t i = x.c.size(); i-- > 0;) v = v * p_ + x.c[i];
    return v;
}

bool Tower::is_zero(const TowerElem& x) const {
    for (unsigned c : x.c)
        if (c != 0) return false;
    return true;
}

TowerElem Tower::add(const TowerElem& a, const TowerElem& b) const {
    if (a.level != b.level) throw domain_error("Tower::add: level mismatch");
    TowerElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
    return r;
}

TowerElem Tower::sub(const TowerElem& a, const TowerElem& b) const { return add(a, neg(b)); }

TowerElem Tower::neg(const TowerElem& a) const {
    TowerElem r = a;
    for (unsigned& c : r.c) c = (p_ - c) % p_;
    return r;
}

std::vector<unsigned> Tower::poly_mul(unsigned lv, const std::vector<unsigned>& a,
                                      const std::vector<unsigned>& b) const {
    const TowerLevelInfo& L = levels_[lv];
    unsigned d = L.degree;
    std::vector<std::uint64_t> conv(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) conv[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    for (auto& v : conv) v %= p_;
    for (unsigned k = 2 * d - 2; k >= d && k < 2 * d; --k) {
        std::uint64_t c = conv[k];
        if (c == 0) continue;
        conv[k] = 0;
        for (unsigned i = 0; i < d; ++i)
            conv[k - d + i] = (conv[k - d + i] + c * (p_ - L.modulus[i])) % p_;
    }
    std::vector<unsigned> out(d);
    for (unsigned i = 0; i < d; ++i) out[i] = static_cast<unsigned>(conv[i]);
    return out;
}

TowerElem Tower::mul(const TowerElem& a, const TowerElem& b) const {
    if (a.level != b.level) throw domain_error("Tower::mul: level mismatch");
    return {a.level, poly_mul(a.level, a.c, b.c)};
}

TowerElem Tower::inv(const TowerElem& a) const {
    if (is_zero(a)) throw domain_error("Tower::inv: zero element");
    const TowerLevelInfo& L = levels_[a.level];
    // extended Euclid in F_p[x] against the modulus
    PPoly r0(L.modulus);
    r0.push_back(1);
    PPoly r1(a.c.begin(), a.c.end());
    ptrim(r1);
    PPoly s0{}, s1{1};
    while (!r1.empty()) {
        PPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        PPoly rem = r0;
        unsigned il = inv_mod_p(r1.back(), p_);
        while (rem.size() >= r1.size() && !rem.empty()) {
            unsigned f = static_cast<unsigned>(static_cast<std::uint64_t>(rem.back()) * il % p_);
            size_t shift = rem.size() - r1.size();
            q[shift] = f;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = (rem[shift + i] + static_cast<std::uint64_t>(f) * (p_ - r1[i]) ) % p_;
            ptrim(rem);
        }
        PPoly s2 = s0;
        s2.resize(std::max(s0.size(), q.size() + s1.size()), 0);
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j)
                s2[i + j] = (s2[i + j] + static_cast<std::uint64_t>(q[i]) * (p_ - s1[j])) % p_;
        }
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw model_error("Tower::inv: gcd with modulus not constant");
    unsigned il = inv_mod_p(r0[0], p_);
    TowerElem out = zero(a.level);
    for (size_t i = 0; i < s0.size(); ++i)
        out.c[i] = static_cast<unsigned>(static_cast<std::uint64_t>(s0[i]) * il % p_);
    return out;
}

TowerElem Tower::pow(const TowerElem& a, std::int64_t e) const {
    TowerElem base = a;
    if (e < 0) {
        base = inv(base);
        e = -e;
    }
    TowerElem acc = one(a.level);
    std::uint64_t ue = static_cast<std::uint64_t>(e);
    while (ue > 0) {
        if (ue & 1) acc = mul(acc, base);
        base = mul(base, base);
        ue >>= 1;
    }
    return acc;
}

TowerElem Tower::scalar_mul(unsigned s, const TowerElem& a) const {
    TowerElem r = a;
    for (unsigned& c : r.c) c = static_cast<unsigned>(static_cast<std::uint64_t>(c) * (s % p_) % p_);
    return r;
}

const std::vector<std::vector<unsigned>>& Tower::frob_matrix(unsigned lv) const {
    std::lock_guard<std::recursive_mutex> lk(cache_mx_);
    auto it = frob_mat_.find(lv);
    if (it != frob_mat_.end()) return it->second;
    const TowerLevelInfo& L = levels_[lv];
    unsigned d = L.degree;
    // column j = (x^j)^p = (x^p)^j
    TowerElem xe = zero(lv);
    if (d == 1)
        xe.c[0] = 0;  // x reduces to the constant 0 when the modulus is x itself
    else
        xe.c[1] = 1;
    TowerElem xp = pow(xe, p_);
    std::vector<std::vector<unsigned>> m(d, std::vector<unsigned>(d, 0));
    TowerElem col = one(lv);
    for (unsigned j = 0; j < d; ++j) {
        for (unsigned i = 0; i < d; ++i) m[i][j] = col.c[i];
        col = mul(col, xp);
    }
    return frob_mat_.emplace(lv, std::move(m)).first->second;
}

TowerElem Tower::frobenius(const TowerElem& x, long r) const {
    unsigned d = levels_[x.level].degree;
    long rr = r % static_cast<long>(d);
    if (rr < 0) rr += d;
    if (rr == 0) return x;
    const auto& m = frob_matrix(x.level);
    TowerElem cur = x;
    for (long it = 0; it < rr; ++it) {
        TowerElem nxt = zero(x.level);
        for (unsigned i = 0; i < d; ++i) {
            std::uint64_t acc = 0;
            for (unsigned j = 0; j < d; ++j) acc += static_cast<std::uint64_t>(m[i][j]) * cur.c[j];
            nxt.c[i] = static_cast<unsigned>(acc % p_);
        }
        cur = std::move(nxt);
    }
    return cur;
}

TowerElem Tower::frobenius_rel(const TowerElem& x, unsigned sub_lv, long r) const {
    unsigned ds = levels_.at(sub_lv).degree;
    if (levels_[x.level].degree % ds != 0)
        throw domain_error("Tower::frobenius_rel: not a subfield");
    return frobenius(x, r * static_cast<long>(ds));
}

const std::vector<std::vector<unsigned>>& Tower::embed_matrix(unsigned from, unsigned to) const {
    std::lock_guard<std::recursive_mutex> lk(cache_mx_);
    auto key = std::make_pair(from, to);
    auto it = embed_mat_.find(key);
    if (it != embed_mat_.end()) return it->second;
    if (from > to) throw domain_error("Tower::embed_matrix: downward embedding");
    unsigned dfrom = levels_[from].degree, dto = levels_[to].degree;
    std::vector<std::vector<unsigned>> m(dto, std::vector<unsigned>(dfrom, 0));
    if (from == to) {
        for (unsigned i = 0; i < dfrom; ++i) m[i][i] = 1;
    } else {
        // image of from-level x in `to`, through the chain
        TowerElem img{from + 1, levels_[from + 1].embed_image};
        TowerElem imgto = embed(img, to);
        TowerElem col = one(to);
        for (unsigned j = 0; j < dfrom; ++j) {
            for (unsigned i = 0; i < dto; ++i) m[i][j] = col.c[i];
            col = mul(col, imgto);
        }
    }
    return embed_mat_.emplace(key, std::move(m)).first->second;
}

TowerElem Tower::embed(const TowerElem& x, unsigned to_lv) const {
    if (x.level == to_lv) return x;
    if (x.level > to_lv) throw domain_error("Tower::embed: target below source");
    const auto& m = embed_matrix(x.level, to_lv);
    TowerElem out = zero(to_lv);
    unsigned dto = levels_[to_lv].degree, dfrom = levels_[x.level].degree;
    for (unsigned i = 0; i < dto; ++i) {
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < dfrom; ++j) acc += static_cast<std::uint64_t>(m[i][j]) * x.c[j];
        out.c[i] = static_cast<unsigned>(acc % p_);
    }
    return out;
}

std::optional<TowerElem> Tower::section(const TowerElem& x, unsigned to_lv) const {
    if (x.level == to_lv) return x;
    if (x.level < to_lv) throw domain_error("Tower::section: target above source");
    const auto& m = embed_matrix(to_lv, x.level);
    unsigned rows = levels_[x.level].degree, cols = levels_[to_lv].degree;
    // solve m * y = x.c over F_p by elimination on an augmented copy
    std::vector<std::vector<unsigned>> a(rows, std::vector<unsigned>(cols + 1, 0));
    for (unsigned i = 0; i < rows; ++i) {
        for (unsigned j = 0; j < cols; ++j) a[i][j] = m[i][j];
        a[i][cols] = x.c[i];
    }
    std::vector<int> pivot_col(rows, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned sel = rank;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        unsigned il = inv_mod_p(a[rank][col], p_);
        for (unsigned j = 0; j <= cols; ++j)
            a[rank][j] = static_cast<unsigned>(static_cast<std::uint64_t>(a[rank][j]) * il % p_);
        for (unsigned i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            unsigned f = a[i][col];
            for (unsigned j = 0; j <= cols; ++j)
                a[i][j] = (a[i][j] + static_cast<std::uint64_t>(f) * (p_ - a[rank][j])) % p_;
        }
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }
    for (unsigned i = rank; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    TowerElem y = zero(to_lv);
    for (unsigned i = 0; i < rank; ++i) y.c[static_cast<unsigned>(pivot_col[i])] = a[i][cols];
    // embeddings are injective, so the solution (if any) is unique
    return y;
}

TowerElem Tower::section_or_throw(const TowerElem& x, unsigned to_lv, const char* what) const {
    auto s = section(x, to_lv);
    if (!s) throw model_error(std::string("Tower::section: ") + what);
    return *s;
}

bool Tower::in_subfield(const TowerElem& x, unsigned sub_lv) const {
    if (levels_[x.level].degree % levels_.at(sub_lv).degree != 0) return false;
    return frobenius_rel(x, sub_lv, 1) == x;
}

TowerElem Tower::norm_to(const TowerElem& x, unsigned sub_lv) const {
    unsigned ds = levels_.at(sub_lv).degree, d = levels_[x.level].degree;
    if (d % ds != 0) throw domain_error("Tower::norm_to: not a subfield");
    unsigned r = d / ds;
    TowerElem acc = one(x.level);
    TowerElem cur = x;
    for (unsigned i = 0; i < r; ++i) {
        acc = mul(acc, cur);
        cur = frobenius_rel(cur, sub_lv, 1);
    }
    return section_or_throw(acc, sub_lv, "norm not in subfield");
}

TowerElem Tower::trace_to(const TowerElem& x, unsigned sub_lv) const {
    unsigned ds = levels_.at(sub_lv).degree, d = levels_[x.level].degree;
    if (d % ds != 0) throw domain_error("Tower::trace_to: not a subfield");
    unsigned r = d / ds;
    TowerElem acc = zero(x.level);
    TowerElem cur = x;
    for (unsigned i = 0; i < r; ++i) {
        acc = add(acc, cur);
        cur = frobenius_rel(cur, sub_lv, 1);
    }
    return section_or_throw(acc, sub_lv, "trace not in subfield");
}

std::uint64_t Tower::dlog(const TowerElem& x) const {
    if (is_zero(x)) throw domain_error("Tower::dlog: zero element");
    const TowerLevelInfo& L = levels_[x.level];
    std::uint64_t ord = L.size - 1;
    if (ord == 1 || x == one(x.level)) return 0;
    if (p_ != 2 && x == minus_one(x.level)) return ord / 2;
    if (x == gen(x.level)) return 1;
    if (ord > dlog_cap_)
        throw domain_error("Tower::dlog: field above the BSGS cap");
    std::uint64_t m0 = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ord))));
    const std::unordered_map<std::uint64_t, std::uint32_t>* table_ptr;
    {
        std::lock_guard<std::recursive_mutex> lk(cache_mx_);
        auto bt = baby_.find(x.level);
        if (bt == baby_.end()) {
            std::unordered_map<std::uint64_t, std::uint32_t> table;
            table.reserve(m0 * 2);
            TowerElem cur = one(x.level);
            for (std::uint64_t j = 0; j < m0; ++j) {
                table.emplace(encoding(cur), static_cast<std::uint32_t>(j));
                cur = mul(cur, gen(x.level));
            }
            bt = baby_.emplace(x.level, std::move(table)).first;
        }
        table_ptr = &bt->second;
    }
    TowerElem giant = inv(pow(gen(x.level), static_cast<std::int64_t>(m0)));
    TowerElem y = x;
    for (std::uint64_t i = 0; i * m0 <= ord; ++i) {
        auto hit = table_ptr->find(encoding(y));
        if (hit != table_ptr->end()) return (i * m0 + hit->second) % ord;
        y = mul(y, giant);
    }
    throw model_error("Tower::dlog: BSGS exhausted (generator order is wrong)");
}

TowerElem Tower::solve_power(const TowerElem& u, std::uint64_t e) const {
    std::uint64_t ord = unit_order(u.level);
    std::uint64_t m = dlog(u);
    auto s = solve_lin_mod(e % ord, m, ord);
    if (!s) throw domain_error("Tower::solve_power: no solution at this level");
    return pow(gen(u.level), static_cast<std::int64_t>(*s));
}

std::vector<TowerElem> Tower::solve_power_all(const TowerElem& u, std::uint64_t e) const {
    std::uint64_t ord = unit_order(u.level);
    std::uint64_t m = dlog(u);
    auto s0 = solve_lin_mod(e % ord, m, ord);
    std::vector<TowerElem> out;
    if (!s0) return out;
    std::uint64_t g = std::gcd(e % ord == 0 ? ord : e % ord, ord);
    std::uint64_t step = ord / g;
    for (std::uint64_t k = 0; k < g; ++k)
        out.push_back(pow(gen(u.level), static_cast<std::int64_t>(*s0 + k * step)));
    return out;
}

nlohmann::json Tower::describe() const {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& L : levels_) {
        levels.push_back({{"degree", L.degree},
                          {"size", L.size},
                          {"modulus", L.modulus},
                          {"generator", L.generator},
                          {"embed_image", L.embed_image}});
    }
    return nlohmann::json{{"p", p_}, {"levels", levels}};
}

Cyclo char_eval(const Tower& t, const MultChar& chi, const TowerElem& x) {
    if (x.level != chi.level) throw domain_error("char_eval: level mismatch");
    if (t.is_zero(x)) throw domain_error("char_eval: multiplicative character at 0");
    std::uint64_t ord = t.unit_order(chi.level);
    if (ord == 1) return Cyclo::one();
    std::uint64_t k = t.dlog(x);
    std::uint64_t ek = static_cast<std::uint64_t>(
        (boost::multiprecision::uint128_t(chi.exponent % ord) * k) % ord);
    return Cyclo::root_of_unity(static_cast<unsigned>(ord), static_cast<long long>(ek));
}

Cyclo char_eval(const Tower& t, const AddChar& psi, const TowerElem& x) {
    if (x.level != psi.level) throw domain_error("char_eval: level mismatch");
    TowerElem tr = t.trace_to(x, t.level_of_degree(1));
    return Cyclo::root_of_unity(t.p(), tr.c[0]);
}

bool mult_char_is_trivial(const Tower& t, const MultChar& chi) {
    return chi.exponent % t.unit_order(chi.level) == 0;
}

}  // namespace csd

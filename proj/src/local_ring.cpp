#include "csd/local_ring.hpp"

namespace csd {

TruncRing::TruncRing(const Tower& t, unsigned level, unsigned m) : t_(&t), lv_(level), m_(m) {
    if (m == 0) throw domain_error("TruncRing: length must be positive");
}

void TruncRing::check(const TruncElem& x) const {
    if (x.level != lv_ || x.c.size() != m_) throw domain_error("TruncRing: element from another ring");
}

TruncElem TruncRing::zero() const { return {lv_, std::vector<TowerElem>(m_, t_->zero(lv_))}; }

TruncElem TruncRing::u() const {
    TruncElem x = zero();
    if (m_ > 1) x.c[1] = t_->one(lv_);
    return x;
}

TruncElem TruncRing::from_residue(const TowerElem& x0) const {
    TruncElem x = zero();
    x.c[0] = t_->embed(x0, lv_);
    return x;
}

TruncElem TruncRing::make(std::vector<TowerElem> coeffs) const {
    TruncElem x = zero();
    for (size_t i = 0; i < coeffs.size() && i < m_; ++i) x.c[i] = t_->embed(coeffs[i], lv_);
    return x;
}

bool TruncRing::is_zero(const TruncElem& x) const {
    for (const auto& c : x.c)
        if (!t_->is_zero(c)) return false;
    return true;
}

TruncElem TruncRing::add(const TruncElem& a, const TruncElem& b) const {
    check(a);
    check(b);
    TruncElem r = a;
    for (unsigned i = 0; i < m_; ++i) r.c[i] = t_->add(r.c[i], b.c[i]);
    return r;
}

TruncElem TruncRing::sub(const TruncElem& a, const TruncElem& b) const { return add(a, neg(b)); }

TruncElem TruncRing::neg(const TruncElem& a) const {
    check(a);
    TruncElem r = a;
    for (auto& c : r.c) c = t_->neg(c);
    return r;
}

TruncElem TruncRing::mul(const TruncElem& a, const TruncElem& b) const {
    check(a);
    check(b);
    TruncElem r = zero();
    for (unsigned i = 0; i < m_; ++i) {
        if (t_->is_zero(a.c[i])) continue;
        for (unsigned j = 0; i + j < m_; ++j)
            r.c[i + j] = t_->add(r.c[i + j], t_->mul(a.c[i], b.c[j]));
    }
    return r;
}

TruncElem TruncRing::inv(const TruncElem& a) const {
    check(a);
    if (!is_unit(a)) throw domain_error("TruncRing::inv: not a unit (constant term is 0)");
    TruncElem b = zero();
    TowerElem i0 = t_->inv(a.c[0]);
    b.c[0] = i0;
    for (unsigned k = 1; k < m_; ++k) {
        TowerElem s = t_->zero(lv_);
        for (unsigned i = 1; i <= k; ++i) s = t_->add(s, t_->mul(a.c[i], b.c[k - i]));
        b.c[k] = t_->neg(t_->mul(i0, s));
    }
    return b;
}

TruncElem TruncRing::mul_u(const TruncElem& a) const {
    check(a);
    TruncElem r = zero();
    for (unsigned i = 0; i + 1 < m_; ++i) r.c[i + 1] = a.c[i];
    return r;
}

TruncElem TruncRing::div_u(const TruncElem& a) const {
    check(a);
    if (!t_->is_zero(a.c[0])) throw domain_error("TruncRing::div_u: nonzero constant term");
    TruncElem r = zero();
    for (unsigned i = 1; i < m_; ++i) r.c[i - 1] = a.c[i];
    return r;
}

TruncElem TruncRing::frob(const TruncElem& a, long r) const {
    check(a);
    TruncElem out = a;
    for (auto& c : out.c) c = t_->frobenius(c, r);
    return out;
}

TruncElem TruncRing::flip_u(const TruncElem& a) const {
    check(a);
    TruncElem out = a;
    for (unsigned i = 1; i < m_; i += 2) out.c[i] = t_->neg(out.c[i]);
    return out;
}

// ---------------------------------------------------------------------------

OreRing::OreRing(const Tower& t, unsigned level, unsigned sigma_pow)
    : t_(&t), lv_(level), sp_(sigma_pow) {}

OrePoly OreRing::norm(OrePoly f) const {
    while (!f.a.empty() && t_->is_zero(f.a.back())) f.a.pop_back();
    return f;
}

OrePoly OreRing::pi(unsigned k) const {
    OrePoly f;
    f.a.assign(k + 1, t_->zero(lv_));
    f.a[k] = t_->one(lv_);
    return f;
}

OrePoly OreRing::scalar(const TowerElem& a) const { return norm({{t_->embed(a, lv_)}}); }

OrePoly OreRing::make(std::vector<TowerElem> coeffs) const {
    OrePoly f;
    for (auto& c : coeffs) f.a.push_back(t_->embed(c, lv_));
    return norm(std::move(f));
}

OrePoly OreRing::add(const OrePoly& f, const OrePoly& g) const {
    OrePoly r;
    r.a.resize(std::max(f.a.size(), g.a.size()), t_->zero(lv_));
    for (size_t i = 0; i < f.a.size(); ++i) r.a[i] = t_->add(r.a[i], f.a[i]);
    for (size_t i = 0; i < g.a.size(); ++i) r.a[i] = t_->add(r.a[i], g.a[i]);
    return norm(std::move(r));
}

OrePoly OreRing::mul(const OrePoly& f, const OrePoly& g) const {
    if (f.a.empty() || g.a.empty()) return {};
    OrePoly r;
    r.a.assign(f.a.size() + g.a.size() - 1, t_->zero(lv_));
    for (size_t i = 0; i < f.a.size(); ++i) {
        if (t_->is_zero(f.a[i])) continue;
        for (size_t j = 0; j < g.a.size(); ++j) {
            // (a Pi^i)(b Pi^j) = a sigma^i(b) Pi^{i+j}
            r.a[i + j] = t_->add(r.a[i + j], t_->mul(f.a[i], sigma(g.a[j], static_cast<long>(i))));
        }
    }
    return norm(std::move(r));
}

OrePoly OreRing::conj_by_scalar(const TowerElem& b, const OrePoly& f) const {
    OrePoly bi = scalar(t_->inv(t_->embed(b, lv_)));
    return mul(mul(bi, f), scalar(b));
}

OrePoly OreRing::map_coeffs_frob(const OrePoly& f, long r) const {
    OrePoly out = f;
    for (auto& c : out.a) c = t_->frobenius(c, r);
    return out;
}

Report formal_module_endo_check(const Tower& t, unsigned qn_level, unsigned q_deg, unsigned n) {
    Report rep;
    rep.title = "formal module endomorphism ring";
    OreRing R(t, qn_level, q_deg);
    // spanning set: the fixed generator and the polynomial basis
    std::vector<TowerElem> gens{t.gen(qn_level)};
    for (unsigned i = 0; i < t.info(qn_level).degree; ++i) {
        TowerElem e = t.zero(qn_level);
        e.c[i] = 1;
        gens.push_back(e);
    }
    bool skew_ok = true, central_ok = true;
    for (const auto& a : gens) {
        OrePoly lhs = R.mul(R.pi(), R.scalar(a));
        OrePoly rhs = R.mul(R.scalar(R.sigma(a)), R.pi());
        if (!(lhs == rhs)) skew_ok = false;
        if (!(R.mul(R.pi(n), R.scalar(a)) == R.mul(R.scalar(a), R.pi(n)))) central_ok = false;
    }
    rep.add("Pi a = a^q Pi on a spanning set", skew_ok);
    rep.add("Pi^n is central", central_ok);
    return rep;
}

// ---------------------------------------------------------------------------

TruncElem apply_twist(const TruncRing& R, const RingTwist& tw, const TruncElem& x) {
    TruncElem y = tw.frob_pow ? R.frob(x, static_cast<long>(tw.frob_pow)) : x;
    return tw.flip_u ? R.flip_u(y) : y;
}

RingTwist compose_twists(const TruncRing& R, const RingTwist& a, const RingTwist& b) {
    unsigned d = R.tower().info(R.level()).degree;
    return {(a.frob_pow + b.frob_pow) % d, a.flip_u != b.flip_u};
}

SemilinearMap smap_identity(const TruncRing& R, unsigned n, RingTwist tw) {
    SemilinearMap m;
    m.tw = tw;
    m.a.assign(n, std::vector<TruncElem>(n, R.zero()));
    for (unsigned i = 0; i < n; ++i) m.a[i][i] = R.one();
    return m;
}

std::vector<std::vector<TruncElem>> mat_apply_twist(const TruncRing& R, const RingTwist& tw,
                                                    const std::vector<std::vector<TruncElem>>& m) {
    auto out = m;
    for (auto& row : out)
        for (auto& e : row) e = apply_twist(R, tw, e);
    return out;
}

SemilinearMap smap_compose(const TruncRing& R, const SemilinearMap& A, const SemilinearMap& B) {
    size_t n = A.a.size();
    if (n != B.a.size()) throw domain_error("smap_compose: dimension mismatch");
    SemilinearMap C;
    C.tw = compose_twists(R, A.tw, B.tw);
    auto tb = mat_apply_twist(R, A.tw, B.a);
    C.a.assign(n, std::vector<TruncElem>(n, R.zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (R.is_zero(A.a[i][k])) continue;
            for (size_t j = 0; j < n; ++j)
                C.a[i][j] = R.add(C.a[i][j], R.mul(A.a[i][k], tb[k][j]));
        }
    return C;
}

SemilinearMap smap_mul_matrix(const TruncRing& R, const std::vector<std::vector<TruncElem>>& m,
                              const SemilinearMap& B) {
    SemilinearMap A{m, RingTwist{}};
    return smap_compose(R, A, B);
}

bool smap_equal(const SemilinearMap& A, const SemilinearMap& B) {
    return A.tw == B.tw && A.a == B.a;
}

}  // namespace csd

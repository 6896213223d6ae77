#pragma once

#include "csd/galois.hpp"

namespace csd {

/// Element of F[[u]]/(u^m) with F a tower level: coefficients c[0..m-1].
/// Units are exactly the elements with c[0] != 0.
struct TruncElem {
    unsigned level = 0;
    std::vector<TowerElem> c;
    bool operator==(const TruncElem&) const = default;
};

/// Equal-characteristic model of a local integer ring truncated at length m,
/// with the residue tower level fixed. The uniformizer is u.
class TruncRing {
public:
    TruncRing(const Tower& t, unsigned level, unsigned m);

    const Tower& tower() const { return *t_; }
    unsigned level() const { return lv_; }
    unsigned length() const { return m_; }

    TruncElem zero() const;
    TruncElem one() const { return from_residue(t_->one(lv_)); }
    TruncElem u() const;
    TruncElem from_residue(const TowerElem& x0) const;  // Teichmuller constant
    TruncElem make(std::vector<TowerElem> coeffs) const;

    bool is_zero(const TruncElem& x) const;
    bool is_unit(const TruncElem& x) const { return !t_->is_zero(x.c[0]); }
    TruncElem add(const TruncElem& a, const TruncElem& b) const;
    TruncElem sub(const TruncElem& a, const TruncElem& b) const;
    TruncElem neg(const TruncElem& a) const;
    TruncElem mul(const TruncElem& a, const TruncElem& b) const;
    TruncElem inv(const TruncElem& a) const;  // throws domain_error on non-units

    TruncElem mul_u(const TruncElem& a) const;
    // Requires c[0] = 0. The top coefficient of the result is only trusted
    // one power below the ring length.
    TruncElem div_u(const TruncElem& a) const;

    TruncElem frob(const TruncElem& a, long r) const;  // coefficientwise x -> x^{p^r}
    TruncElem flip_u(const TruncElem& a) const;        // u -> -u
    TowerElem residue(const TruncElem& a) const { return a.c[0]; }

private:
    const Tower* t_;
    unsigned lv_;
    unsigned m_;
    void check(const TruncElem& x) const;
};

/// Skew polynomial sum a_i Pi^i over a tower level, with the commutation rule
/// Pi a = sigma(a) Pi for sigma a fixed p-power Frobenius of the level.
struct OrePoly {
    std::vector<TowerElem> a;  // ascending in Pi; normalized with no trailing zeros
    bool operator==(const OrePoly&) const = default;
};

class OreRing {
public:
    // sigma = absolute Frobenius to the power sigma_pow (e.g. deg F_q for the q-power map)
    OreRing(const Tower& t, unsigned level, unsigned sigma_pow);

    const Tower& tower() const { return *t_; }
    unsigned level() const { return lv_; }
    unsigned sigma_pow() const { return sp_; }

    OrePoly zero() const { return {}; }
    OrePoly one() const { return scalar(t_->one(lv_)); }
    OrePoly pi(unsigned k = 1) const;
    OrePoly scalar(const TowerElem& a) const;
    OrePoly make(std::vector<TowerElem> coeffs) const;

    TowerElem sigma(const TowerElem& x, long r = 1) const { return t_->frobenius(x, r * static_cast<long>(sp_)); }

    OrePoly add(const OrePoly& f, const OrePoly& g) const;
    OrePoly mul(const OrePoly& f, const OrePoly& g) const;
    // b^{-1} f b for a nonzero scalar b (degree-0 conjugation)
    OrePoly conj_by_scalar(const TowerElem& b, const OrePoly& f) const;
    // coefficientwise tau given as an absolute Frobenius power
    OrePoly map_coeffs_frob(const OrePoly& f, long r) const;

private:
    const Tower* t_;
    unsigned lv_;
    unsigned sp_;
    OrePoly norm(OrePoly f) const;
};

// Confirms that in F_{q^n}[Pi]: Pi a = a^q Pi on a spanning set, and that Pi^n
// is central (so the identification Pi^n = uniformizer is consistent).
Report formal_module_endo_check(const Tower& t, unsigned qn_level, unsigned q_deg, unsigned n);

/// Automorphism of a TruncRing generated by a coefficient Frobenius power and
/// an optional sign flip of u (the ramified Galois action on the eq-char model).
struct RingTwist {
    unsigned frob_pow = 0;
    bool flip_u = false;
    bool operator==(const RingTwist&) const = default;
};

TruncElem apply_twist(const TruncRing& R, const RingTwist& tw, const TruncElem& x);
RingTwist compose_twists(const TruncRing& R, const RingTwist& a, const RingTwist& b);

/// x -> A * tw(x) coordinatewise on a free module over a TruncRing; matrices
/// use the column convention (image of e_j is column j).
struct SemilinearMap {
    std::vector<std::vector<TruncElem>> a;
    RingTwist tw;
};

SemilinearMap smap_identity(const TruncRing& R, unsigned n, RingTwist tw = {});
SemilinearMap smap_compose(const TruncRing& R, const SemilinearMap& A, const SemilinearMap& B);
SemilinearMap smap_mul_matrix(const TruncRing& R, const std::vector<std::vector<TruncElem>>& m,
                              const SemilinearMap& B);  // plain matrix times map
bool smap_equal(const SemilinearMap& A, const SemilinearMap& B);
std::vector<std::vector<TruncElem>> mat_apply_twist(const TruncRing& R, const RingTwist& tw,
                                                    const std::vector<std::vector<TruncElem>>& m);

}  // namespace csd

#pragma once

#include "csd/local_ring.hpp"

#include <memory>

namespace csd {

enum class Case { split, unramified, ramified };

const char* case_name(Case c);
std::optional<Case> case_from_name(const std::string& s);

/// Everything one run instance needs: the residue tower with the five levels
/// F_p <= F_{q'} <= F_q <= F_{q^n} <= F_{q^{2n}}, the case of F/F^+, and the
/// truncation length of the D-model. Immutable; safe to share across threads.
struct LocalContext {
    Case kind;
    unsigned n = 1;
    unsigned m = 2;     // truncation: D^x is modeled mod 1 + Pi^m O_D
    std::uint64_t p = 0, qprime = 0, q = 0;
    std::shared_ptr<const Tower> tower_ptr;
    unsigned lv_p = 0, lv_qp = 0, lv_q = 0, lv_qn = 0, lv_q2n = 0;
    unsigned cyclo_modulus = 4;  // lcm(p, q-1, 4, c_order)

    const Tower& tower() const { return *tower_ptr; }
    std::uint64_t rep_dim() const { return (pow_u64(q, n) - 1) / (q - 1); }
    // q-power Frobenius iterate on a level containing F_q
    TowerElem sigma(const TowerElem& x, long r = 1) const {
        return tower().frobenius_rel(x, lv_q, r);
    }
    // q'-power Frobenius (the residue action of tau in the unramified case)
    TowerElem tau_res(const TowerElem& x, long r = 1) const {
        return tower().frobenius_rel(x, lv_qp, r);
    }
};

// q_or_qprime is q' for the unramified case (q = q'^2), q otherwise.
LocalContext make_context(Case kind, std::uint64_t q_or_qprime, unsigned n, unsigned m = 2,
                          unsigned c_order = 0);

/// Element of D^x modulo 1 + Pi^m O_D: Pi^val * (u[0] + u[1] Pi + ... ), u[0] != 0,
/// unit coefficients in F_{q^n}.
struct DElement {
    long val = 0;
    std::vector<TowerElem> u;
    bool operator==(const DElement&) const = default;
};

DElement d_one(const LocalContext& cx);
DElement d_pi(const LocalContext& cx);
DElement d_teich(const LocalContext& cx, const TowerElem& a);        // constant, a != 0
DElement d_one_plus_pi(const LocalContext& cx, const TowerElem& d);  // 1 + Pi [d]
DElement d_make(const LocalContext& cx, long val, std::vector<TowerElem> unit);
DElement d_mul(const LocalContext& cx, const DElement& x, const DElement& y);
DElement d_inv(const LocalContext& cx, const DElement& x);
DElement d_pow(const LocalContext& cx, const DElement& x, long e);
std::string d_str(const LocalContext& cx, const DElement& x);

/// The twist pair (tau, t) on D^x. For the ramified case it is attached to a
/// chosen beta in F_{q^{2n}} with beta^{q^n - 1} = -1 and alpha = beta^{q-1}.
struct TwistData {
    Case kind = Case::split;
    TowerElem beta;   // lv_q2n, ramified only
    TowerElem alpha;  // lv_qn,  ramified only
    DElement t;
};

TwistData make_twist(const LocalContext& cx);  // canonical choice (ramified: smallest-dlog beta)
TwistData make_twist_with_beta(const LocalContext& cx, const TowerElem& beta);
// The distinguished choice for odd n: beta lifted from eta with
// eta^2 = eps^{-1}, eps the smallest-dlog nonsquare; then alpha = -1, t = [eps].
TwistData make_twist_canonical_odd(const LocalContext& cx);
std::vector<TowerElem> all_valid_betas(const LocalContext& cx);

DElement tau_apply(const LocalContext& cx, const TwistData& tw, const DElement& x);
Report check_twist_axioms(const LocalContext& cx, const TwistData& tw);

/// (zeta, chi, c) on the D side, with the derived xi (minimal-dlog solution of
/// Nr(xi) = zeta) and b = Teichmuller(xi).
struct SscParamsD {
    TowerElem zeta;  // lv_q
    MultChar chi;    // on lv_q
    long c_order = 4;
    long c_exp = 0;
    Cyclo c;
    TowerElem xi;  // lv_qn
    DElement b;    // [xi]
};

SscParamsD make_ssc_d(const LocalContext& cx, const TowerElem& zeta, std::uint64_t chi_exp,
                      long c_order, long c_exp);
// xi varied over every norm-zeta element (the isomorphism class must not depend on it).
SscParamsD make_ssc_d_with_xi(const LocalContext& cx, const TowerElem& zeta, std::uint64_t chi_exp,
                              long c_order, long c_exp, const TowerElem& xi);

bool in_H(const LocalContext& cx, const SscParamsD& pr, const DElement& h);
// Lambda^D_{xi,chi,c}; throws domain_error when h is not in H^D_xi.
Cyclo lambda_d(const LocalContext& cx, const SscParamsD& pr, const DElement& h);
// Lambda^D with the psi factor dropped (trivial on 1 + Pi O_D). Still a
// character of H, but its induced representation is reducible; negative-control
// input for the irreducibility check.
Cyclo lambda_d_degenerate(const LocalContext& cx, const SscParamsD& pr, const DElement& h);

// Right coset representatives u_i of H^D_xi \ D^x: Teichmuller lifts of g^i,
// g the fixed generator of F_{q^n}^x, i = 0..d-1.
DElement coset_rep(const LocalContext& cx, unsigned i);
// The unique (j, lam) with u_i g = h u_j, h in H^D_xi, lam = Lambda^D(h).
std::pair<unsigned, Cyclo> coset_action(const LocalContext& cx, const SscParamsD& pr, unsigned i,
                                        const DElement& g);

}  // namespace csd

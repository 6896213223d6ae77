#pragma once

#include "csd/division_algebra.hpp"

namespace csd {

/// GL_n(F)-side parameters (zeta, chi, c) of a simple supercuspidal, tied to a
/// LocalContext for the case data.
struct SscParamsGL {
    TowerElem zeta;  // lv_q
    std::uint64_t chi_exp = 0;
    long c_order = 4;
    long c_exp = 0;
    Cyclo c;
};

SscParamsGL make_ssc_gl(const LocalContext& cx, const TowerElem& zeta, std::uint64_t chi_exp,
                        long c_order, long c_exp);
bool gl_params_equal(const LocalContext& cx, const SscParamsGL& a, const SscParamsGL& b);

// pi^vee has parameters ((-1)^n zeta, chi^{-1}, chi(-1) c^{-1}).
SscParamsGL contragredient_params(const LocalContext& cx, const SscParamsGL& p);
// Parameters of pi^tau, per the case of F/F^+.
SscParamsGL tau_params(const LocalContext& cx, const SscParamsGL& p);
// Case-wise criterion; provably equivalent to tau_params == contragredient_params.
bool is_conjugate_self_dual(const LocalContext& cx, const SscParamsGL& p);
// Closed form for the parity of rec_F(pi); requires csd, result must be a sign.
int predicted_rec_parity(const LocalContext& cx, const SscParamsGL& p);
// All eps in F_q^x with eps^{q'-1} = -1 (used by the unramified closed form).
std::vector<TowerElem> rec_parity_eps_choices(const LocalContext& cx);

// --- finite-level Iwahori machinery over F_q[u]/u^m ------------------------

using GlMat = std::vector<std::vector<TruncElem>>;

// The ring every GL-side matrix lives over. Length >= 3 keeps the coefficients
// that psi_zeta and Iw_+ membership read exact after one phi-conjugation.
TruncRing gl_ring(const LocalContext& cx, unsigned m = 4);

GlMat gl_identity(const LocalContext& cx, const TruncRing& R);
GlMat gl_mul(const TruncRing& R, const GlMat& a, const GlMat& b);
bool gl_equal(const GlMat& a, const GlMat& b);
GlMat gl_scalar_mul(const TruncRing& R, const TruncElem& s, const GlMat& a);

// The companion-style matrix with superdiagonal 1 and corner entry [zeta] u.
GlMat phi_zeta(const LocalContext& cx, const TruncRing& R, const TowerElem& zeta);
bool is_iw_plus(const LocalContext& cx, const TruncRing& R, const GlMat& g);
// diag(1, -1, ..., (-1)^{n-1})
GlMat intertwiner_a(const LocalContext& cx, const TruncRing& R);
GlMat conj_by_a(const LocalContext& cx, const TruncRing& R, const GlMat& g);
// phi_zeta g phi_zeta^{-1}; top coefficients of the last column lose one u-power.
GlMat conj_by_phi(const LocalContext& cx, const TruncRing& R, const TowerElem& zeta, const GlMat& g);
// Entrywise Galois action of tau on matrices (q'-Frobenius / u -> -u / identity).
GlMat gl_tau(const LocalContext& cx, const TruncRing& R, const GlMat& g);
TowerElem tau_residue(const LocalContext& cx, const TowerElem& x);  // tau on F_q

Cyclo psi_zeta(const LocalContext& cx, const TruncRing& R, const TowerElem& zeta, const GlMat& g);
// Lambda_{zeta,chi,c} on the factored element x phi_zeta^k g.
Cyclo lambda_gl(const LocalContext& cx, const TruncRing& R, const SscParamsGL& p,
                const TruncElem& x, long k, const GlMat& g);

// Proof identities of the contragredient and tau-twist computations:
// a phi_zeta a^{-1} = -phi_{(-1)^n zeta}, the Lambda intertwining identity, and
// the tau-side identities tau(phi_mu) = phi_{tau-case(mu)}, psi_zeta(tau g) = psi_{tau^{-1} zeta}(g).
// Exhaustive over level-2 Iw_+ data for q <= 3 and n <= 3, sampled otherwise.
Report verify_intertwiner_gl(const LocalContext& cx, const SscParamsGL& p, unsigned sample_budget,
                             std::uint64_t seed, bool corrupt_a = false);

}  // namespace csd

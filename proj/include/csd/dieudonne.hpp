#pragma once

#include "csd/division_algebra.hpp"

namespace csd {

/// The standard rank-n Dieudonne module over the eq-char model of O_Fbreve
/// (coefficients in F_{q^{2n}}, truncation length m): F(e_i) = w e_{i+1},
/// F(e_n) = e_1 (sigma-linear), V its sigma^{-1}-linear partner, Pi linear.
struct StdDieudonne {
    unsigned n = 1;
    SemilinearMap F, V, Pi;
};

// Ring all module matrices live over.
TruncRing dieudonne_ring(const LocalContext& cx);

StdDieudonne build_standard(const LocalContext& cx, const TruncRing& R);
// Scalar action of a in F_{q^n}: e_i -> sigma^i(a) e_i.
SemilinearMap scalar_action(const LocalContext& cx, const TruncRing& R, const TowerElem& a);
// The twisted module D(X^tau) of the ramified case: F'(e_i) = -w e_{i+1}, F'(e_n) = e_1.
StdDieudonne build_twisted_ramified(const LocalContext& cx, const TruncRing& R);

// FV = VF = w, Pi commutes with F and V, scalars commute with F and V,
// Pi a = sigma(a) Pi, Pi^n = w, and dim D/VD = 1.
Report check_endo_relations(const LocalContext& cx);
// Optionally corrupt Pi first (negative control).
Report check_endo_relations(const LocalContext& cx, bool corrupt_pi);

// The unramified comparison: coordinatewise sigma after V equals Pi, entrywise
// V = Pi, and the composite has twist exponent 0.
Report verify_unramified_iota(const LocalContext& cx);
// The ramified comparison for a given beta: conjugated scalars are fixed,
// the conjugated Pi carries sigma^{i-1}(alpha) and -alpha*w before the tau^{-1}
// entry twist and equals the alpha Pi action after it, and iota * tau(iota) is
// the scalar action of beta^{-2}.
Report verify_ramified_iota(const LocalContext& cx, const TowerElem& beta);

// Ore-ring form of the comparison isomorphisms; confirms the produced pair
// (tau(Pi), t) agrees with the TwistData of the division algebra model.
Report verify_eqchar(const LocalContext& cx);

}  // namespace csd

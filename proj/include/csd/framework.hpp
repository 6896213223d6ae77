#pragma once

#include "csd/linalg.hpp"

namespace csd {

/// Explicit finite group by multiplication table.
struct FiniteGroup {
    std::string name;
    unsigned order = 1;
    std::vector<std::vector<unsigned>> mul;
    unsigned e = 0;
    std::vector<unsigned> inv;
};

/// An automorphism tau with tau^2 = Int(t), tau(t) = t.
struct GroupTwist {
    std::vector<unsigned> tau;
    unsigned t = 0;
};

struct MatRep {
    std::string name;
    unsigned dim = 1;
    std::vector<CMat> mats;  // one matrix per group element
};

struct GroupModel {
    FiniteGroup g;
    GroupTwist tw;
    std::vector<MatRep> reps;  // the full set of irreducibles
};

GroupModel model_cyclic(unsigned n, bool tau_inversion);  // t = identity element
GroupModel model_s3();
GroupModel model_q8();
GroupModel model_product(const GroupModel& m1, const GroupModel& m2);

// Group axioms, tau-axioms, homomorphism property, irreducibility of each rep
// (sum |tr|^2 = |G|), and completeness (sum dim^2 = |G|).
Report validate_model(const GroupModel& m);

// Invariant pairing for (tau, t) over all group elements; nullopt when the rep
// is not conjugate self-dual.
std::optional<CMat> invariant_pairing(const GroupModel& m, const MatRep& rep,
                                      const GroupTwist& tw);
int rep_parity(const MatRep& rep, const GroupTwist& tw, const CMat& B);
// Classical Frobenius-Schur indicator (1/|G|) sum_g tr pi(g^2); in {-1, 0, 1}.
int fs_indicator(const GroupModel& m, const MatRep& rep);

// The full framework property suite on one model: C in {+-1}, change-of-tau
// invariance over every h in G, the 1-dim rule C = pi(t), det-parity
// C_{det pi} = C^dim, and (when tau = id, t = e) agreement with the classical
// Frobenius-Schur indicator.
Report check_framework(const GroupModel& m);
// Product multiplicativity C_{pi1 x pi2} = C_{pi1} C_{pi2}.
Report check_framework_product(const GroupModel& m1, const GroupModel& m2);

}  // namespace csd

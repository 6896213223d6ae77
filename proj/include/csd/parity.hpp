#pragma once

#include "csd/gl_side.hpp"

namespace csd {

/// A permutation-with-scalar action on coset indices: i -> (to[i], w[i]),
/// recording u_i g = h u_{to[i]} with w[i] = Lambda^D(h). Scalars are roots of
/// unity; wexp holds their exponents mod wmod so the orbit solvers can run on
/// integers (wmod = 0 when the exponent form is unavailable).
struct MonomialMap {
    std::vector<unsigned> to;
    std::vector<Cyclo> w;
    unsigned wmod = 0;
    std::vector<long> wexp;
};

struct GenAction {
    std::string name;
    DElement g;
    MonomialMap act;      // action data of g
    MonomialMap act_tau;  // action data of tau(g)
};

/// The compactly induced representation cInd_{H^D_xi}^{D^x} Lambda^D as monomial
/// data over the fixed coset representatives, together with tau companions and
/// the action of the twist element t.
struct MonomialRep {
    unsigned dim = 0;
    std::vector<GenAction> gens;
    MonomialMap t_act;
};

MonomialMap monomial_of(const LocalContext& cx, const SscParamsD& pr, const DElement& g);
MonomialRep build_rep_d(const LocalContext& cx, const SscParamsD& pr, const TwistData& tw);
// Variant with Lambda^D replaced by its psi-free degeneration (reducible; negative control).
MonomialRep build_rep_d_degenerate(const LocalContext& cx, const SscParamsD& pr,
                                   const TwistData& tw);

// Mackey criterion via the coset-pair orbit count: the commutant is 1-dimensional.
bool irreducibility_check(const MonomialRep& rep);
unsigned commutant_dimension(const MonomialRep& rep);

struct BilinearForm {
    unsigned dim = 0;
    std::vector<std::vector<Cyclo>> b;
};

// Solves pi(tau(g))^T B pi(g) = B over the generators. Returns nullopt when the
// solution space is zero (not conjugate self-dual); throws model_error when it
// has dimension >= 2 or the solution is degenerate.
std::optional<BilinearForm> solve_invariant_pairing(const MonomialRep& rep);
// Dense oracle: assembles the full linear system and computes its null space.
// Test-support path, independent of the orbit solver.
std::optional<BilinearForm> solve_invariant_pairing_dense(const MonomialRep& rep);

// The sign C with pi(t)^T B = C B^T; throws model_error if no scalar works or C is not a sign.
int parity_bruteforce(const MonomialRep& rep, const BilinearForm& B);

/// Explicit witness of the closed-form parity: the intertwiner a, the element
/// z = tau(a) t a of H, and Lambda^D(z).
struct ClosedFormWitness {
    Case kind = Case::split;
    DElement a;
    DElement z;
    Cyclo value;
    std::string summary;
};

std::pair<int, ClosedFormWitness> parity_closed_form(const LocalContext& cx, const SscParamsD& pr);

// JL transfer on parameters: (zeta, chi, c) -> (zeta, chi, (-1)^{n-1} c).
SscParamsD jl_of_gl_params(const LocalContext& cx, const SscParamsGL& p);

struct MainCheck {
    bool csd = false;
    int c_jl_brute = 0;
    int c_jl_closed = 0;
    int c_rec_predicted = 0;
    bool brute_eq_closed = false;
    bool main_identity = false;  // c_rec = (-1)^{n-1} c_jl_brute
    bool consistent = false;
    ClosedFormWitness witness;
};

MainCheck main_theorem_check(const LocalContext& cx, const SscParamsGL& p, const TwistData& tw);

}  // namespace csd

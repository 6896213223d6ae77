#include <doctest.h>

#include "csd/parity.hpp"

using namespace csd;

namespace {

SscParamsGL gl(const LocalContext& cx, std::uint64_t zeta_dlog, std::uint64_t chi_exp,
               long c_order, long c_exp) {
    return make_ssc_gl(cx, cx.tower().pow(cx.tower().gen(cx.lv_q), static_cast<long>(zeta_dlog)),
                       chi_exp, c_order, c_exp);
}

}  // namespace

TEST_CASE("induced representation dimensions") {
    {
        LocalContext cx = make_context(Case::split, 3, 2);
        CHECK(cx.rep_dim() == 4);
    }
    {
        LocalContext cx = make_context(Case::split, 2, 3);
        CHECK(cx.rep_dim() == 7);
    }
    {
        LocalContext cx = make_context(Case::unramified, 2, 2);  // q = 4, n = 2
        CHECK(cx.rep_dim() == 5);
    }
}

TEST_CASE("irreducibility by coset-pair orbits") {
    LocalContext cx = make_context(Case::split, 3, 2);
    const Tower& t = cx.tower();
    TwistData tw = make_twist(cx);
    for (std::uint64_t e = 0; e < 2; ++e) {
        SscParamsD pr = make_ssc_d(cx, t.one(cx.lv_q), e, 4, 1);
        MonomialRep rep = build_rep_d(cx, pr, tw);
        CHECK(irreducibility_check(rep));
        CHECK(commutant_dimension(rep) == 1);
        // negative control: Lambda trivial on 1 + Pi O_D induces reducibly
        MonomialRep bad = build_rep_d_degenerate(cx, pr, tw);
        CHECK(!irreducibility_check(bad));
        CHECK(commutant_dimension(bad) > 1);
    }
    // n = 1 : one-dimensional, trivially irreducible
    LocalContext cx1 = make_context(Case::split, 3, 1);
    SscParamsD pr1 = make_ssc_d(cx1, cx1.tower().one(cx1.lv_q), 0, 4, 0);
    MonomialRep rep1 = build_rep_d(cx1, pr1, make_twist(cx1));
    CHECK(rep1.dim == 1);
    CHECK(irreducibility_check(rep1));
}

TEST_CASE("invariant pairing: existence, uniqueness, dense-solver oracle") {
    LocalContext cx = make_context(Case::split, 3, 2);
    const Tower& t = cx.tower();
    TwistData tw = make_twist(cx);
    // split q=3, n=2, zeta=1, chi quadratic, c_D = i: conjugate self-dual
    SscParamsD pr = make_ssc_d(cx, t.one(cx.lv_q), 1, 4, 1);
    MonomialRep rep = build_rep_d(cx, pr, tw);
    auto B = solve_invariant_pairing(rep);
    REQUIRE(B.has_value());
    auto Bd = solve_invariant_pairing_dense(rep);
    REQUIRE(Bd.has_value());
    for (unsigned i = 0; i < rep.dim; ++i)
        for (unsigned j = 0; j < rep.dim; ++j) CHECK(B->b[i][j] == Bd->b[i][j]);

    // non-csd parameters: no pairing on either path (c = zeta_8: c^2 != chi(-1))
    SscParamsD bad = make_ssc_d(cx, t.one(cx.lv_q), 1, 8, 1);
    MonomialRep rep_bad = build_rep_d(cx, bad, tw);
    CHECK(!solve_invariant_pairing(rep_bad).has_value());
    CHECK(!solve_invariant_pairing_dense(rep_bad).has_value());
}

TEST_CASE("brute-force parity values from the closed-form table") {
    // split q=3, n=2, zeta=1, chi quadratic, c_D = +-i -> -1
    {
        LocalContext cx = make_context(Case::split, 3, 2);
        TwistData tw = make_twist(cx);
        for (long ce : {1L, 3L}) {
            SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 1, 4, ce);
            MonomialRep rep = build_rep_d(cx, pr, tw);
            auto B = solve_invariant_pairing(rep);
            REQUIRE(B.has_value());
            CHECK(parity_bruteforce(rep, *B) == -1);
        }
    }
    // unramified q'=2, q=4, n=2, zeta=1, chi trivial, c_D = -1 -> -1
    {
        LocalContext cx = make_context(Case::unramified, 2, 2);
        TwistData tw = make_twist(cx);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 0, 4, 2);
        MonomialRep rep = build_rep_d(cx, pr, tw);
        auto B = solve_invariant_pairing(rep);
        REQUIRE(B.has_value());
        CHECK(parity_bruteforce(rep, *B) == -1);
    }
    // n=1 split with trivial character (q = 2, the self-dual 1-dim case): C = Lambda(t) = 1
    {
        LocalContext cx = make_context(Case::split, 2, 1);
        TwistData tw = make_twist(cx);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 0, 4, 0);
        MonomialRep rep = build_rep_d(cx, pr, tw);
        auto B = solve_invariant_pairing(rep);
        REQUIRE(B.has_value());
        CHECK(B->b[0][0] == Cyclo::one());  // B = (1)
        CHECK(parity_bruteforce(rep, *B) == 1);
    }
}

TEST_CASE("closed-form witnesses") {
    // unramified q'=2, q=4, n=2: eps = 1, sign = c_D
    {
        LocalContext cx = make_context(Case::unramified, 2, 2);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 0, 4, 2);  // c_D = -1
        auto [sign, w] = parity_closed_form(cx, pr);
        CHECK(sign == -1);
        CHECK(in_H(cx, pr, w.z));
    }
    // ramified q=3, n=3, chi nontrivial quadratic: sign = chi(eps) = -1
    {
        LocalContext cx = make_context(Case::ramified, 3, 3);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 1, 4, 1);
        auto [sign, w] = parity_closed_form(cx, pr);
        CHECK(sign == -1);
        CHECK(in_H(cx, pr, w.z));
    }
    // split q=3, n=2, chi trivial: +1
    {
        LocalContext cx = make_context(Case::split, 3, 2);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 0, 4, 0);
        auto [sign, w] = parity_closed_form(cx, pr);
        CHECK(sign == 1);
        CHECK(in_H(cx, pr, w.z));
    }
    // witness construction fails off the csd locus (split n odd, p != 2)
    {
        LocalContext cx = make_context(Case::split, 3, 3);
        SscParamsD pr = make_ssc_d(cx, cx.tower().one(cx.lv_q), 0, 4, 0);
        CHECK_THROWS_AS(parity_closed_form(cx, pr), domain_error);
    }
}

TEST_CASE("JL parameter transfer") {
    LocalContext cx2 = make_context(Case::split, 3, 2);
    SscParamsGL p = gl(cx2, 0, 1, 4, 0);  // c = 1
    SscParamsD dp = jl_of_gl_params(cx2, p);
    CHECK(dp.c == Cyclo::integer(-1));  // n = 2: c_D = -c
    LocalContext cx3 = make_context(Case::split, 2, 3);
    SscParamsGL p3 = make_ssc_gl(cx3, cx3.tower().one(cx3.lv_q), 0, 8, 3);
    CHECK(jl_of_gl_params(cx3, p3).c == p3.c);  // n odd: identity on c
    // n = 4, c = i -> c_D = -i
    LocalContext cx4 = make_context(Case::split, 2, 4);
    SscParamsGL p4 = make_ssc_gl(cx4, cx4.tower().one(cx4.lv_q), 0, 4, 1);
    CHECK(jl_of_gl_params(cx4, p4).c == Cyclo::root_of_unity(4, 3));
}

TEST_CASE("main theorem consistency on hand-checked instances") {
    // split q=3, n=2, chi quadratic, c = i: C_JL = -1, C_rec = +1
    {
        LocalContext cx = make_context(Case::split, 3, 2);
        MainCheck mc = main_theorem_check(cx, gl(cx, 0, 1, 4, 1), make_twist(cx));
        CHECK(mc.c_jl_brute == -1);
        CHECK(mc.c_rec_predicted == 1);
        CHECK(mc.consistent);
    }
    // ramified q=3, n=3, chi trivial, c = +-1: C_JL = +1 = C_rec
    {
        LocalContext cx = make_context(Case::ramified, 3, 3);
        for (long ce : {0L, 2L}) {
            MainCheck mc = main_theorem_check(cx, gl(cx, 0, 0, 4, ce), make_twist(cx));
            CHECK(mc.c_jl_brute == 1);
            CHECK(mc.c_rec_predicted == 1);
            CHECK(mc.consistent);
        }
    }
    // unramified q'=2, q=4, n=2, zeta=1, chi trivial, c=1: C_rec = +1, C_JL = -1
    {
        LocalContext cx = make_context(Case::unramified, 2, 2);
        MainCheck mc = main_theorem_check(cx, gl(cx, 0, 0, 4, 0), make_twist(cx));
        CHECK(mc.c_rec_predicted == 1);
        CHECK(mc.c_jl_brute == -1);
        CHECK(mc.consistent);
    }
    // precondition violation
    {
        LocalContext cx = make_context(Case::split, 3, 3);
        CHECK_THROWS_AS(main_theorem_check(cx, gl(cx, 0, 0, 4, 0), make_twist(cx)), domain_error);
    }
}

TEST_CASE("parity is independent of the choice of xi") {
    LocalContext cx = make_context(Case::split, 3, 2);
    const Tower& t = cx.tower();
    TwistData tw = make_twist(cx);
    // all xi with Nr(xi) = 1 in F_9: dlogs 0, 4 shifted by the index... enumerate
    std::vector<TowerElem> xis;
    for (std::uint64_t k = 0; k < 8; ++k) {
        TowerElem x = t.pow(t.gen(cx.lv_qn), static_cast<long>(k));
        if (t.norm_to(x, cx.lv_q) == t.one(cx.lv_q)) xis.push_back(x);
    }
    CHECK(xis.size() == 4);  // kernel of the norm has (q^n-1)/(q-1) elements
    std::optional<int> first;
    for (const auto& xi : xis) {
        SscParamsD pr = make_ssc_d_with_xi(cx, t.one(cx.lv_q), 1, 4, 1, xi);
        MonomialRep rep = build_rep_d(cx, pr, tw);
        auto B = solve_invariant_pairing(rep);
        REQUIRE(B.has_value());
        int s = parity_bruteforce(rep, *B);
        if (!first) first = s;
        CHECK(s == *first);
    }
}

TEST_CASE("parity is independent of the choice of beta (ramified q=3, n=3)") {
    LocalContext cx = make_context(Case::ramified, 3, 3);
    const Tower& t = cx.tower();
    std::vector<SscParamsD> prs{make_ssc_d(cx, t.one(cx.lv_q), 0, 4, 0),
                                make_ssc_d(cx, t.one(cx.lv_q), 1, 4, 1)};
    for (const auto& pr : prs) {
        std::optional<int> first;
        for (const auto& beta : all_valid_betas(cx)) {
            TwistData tw = make_twist_with_beta(cx, beta);
            MonomialRep rep = build_rep_d(cx, pr, tw);
            auto B = solve_invariant_pairing(rep);
            REQUIRE(B.has_value());
            int s = parity_bruteforce(rep, *B);
            if (!first) first = s;
            CHECK(s == *first);
        }
        auto [closed, w] = parity_closed_form(cx, pr);
        CHECK(closed == *first);
    }
}

TEST_CASE("solver success matches the csd criterion across a small grid") {
    LocalContext cx = make_context(Case::split, 3, 2);
    const Tower& t = cx.tower();
    TwistData tw = make_twist(cx);
    for (std::uint64_t zd = 0; zd < 2; ++zd)
        for (std::uint64_t e = 0; e < 2; ++e)
            for (long ce = 0; ce < 8; ++ce) {
                SscParamsGL p = make_ssc_gl(cx, t.pow(t.gen(cx.lv_q), static_cast<long>(zd)), e, 8, ce);
                SscParamsD dp = jl_of_gl_params(cx, p);
                MonomialRep rep = build_rep_d(cx, dp, tw);
                bool solvable = solve_invariant_pairing(rep).has_value();
                CHECK(solvable == is_conjugate_self_dual(cx, p));
            }
}

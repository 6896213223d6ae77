#include <doctest.h>

#include "csd/dieudonne.hpp"

using namespace csd;

TEST_CASE("standard module arrays") {
    LocalContext cx = make_context(Case::split, 3, 2);  // q = 3, n = 2
    TruncRing R = dieudonne_ring(cx);
    StdDieudonne mod = build_standard(cx, R);
    // columns: F e_0 = u e_1, F e_1 = e_0
    CHECK(mod.F.a[1][0] == R.u());
    CHECK(mod.F.a[0][1] == R.one());
    CHECK(R.is_zero(mod.F.a[0][0]));
    CHECK(mod.Pi.a == mod.V.a);
    CHECK(mod.Pi.tw == RingTwist{});

    // FV = u id for n = 3 via semilinear composition
    LocalContext cx3 = make_context(Case::split, 3, 3);
    TruncRing R3 = dieudonne_ring(cx3);
    StdDieudonne m3 = build_standard(cx3, R3);
    SemilinearMap fv = smap_compose(R3, m3.F, m3.V);
    SemilinearMap wid = smap_identity(R3, 3);
    for (auto& row : wid.a)
        for (auto& e : row) e = R3.mul_u(e);
    CHECK(smap_equal(fv, wid));

    // Pi^n = u id
    SemilinearMap pin = smap_identity(R3, 3);
    for (unsigned i = 0; i < 3; ++i) pin = smap_compose(R3, pin, m3.Pi);
    CHECK(smap_equal(pin, wid));
}

TEST_CASE("endomorphism relations pass and the corrupted Pi fails") {
    CHECK(check_endo_relations(make_context(Case::split, 3, 2)).ok());   // n=2, q=3
    CHECK(check_endo_relations(make_context(Case::split, 2, 4)).ok());   // n=4, q=2
    CHECK(check_endo_relations(make_context(Case::split, 9, 2)).ok());   // q = 9
    CHECK(check_endo_relations(make_context(Case::split, 2, 1)).ok());   // degenerate n=1
    CHECK(!check_endo_relations(make_context(Case::split, 3, 2), true).ok());
}

TEST_CASE("unramified comparison") {
    CHECK(verify_unramified_iota(make_context(Case::unramified, 2, 2)).ok());  // n=2, q'=2
    CHECK(verify_unramified_iota(make_context(Case::unramified, 3, 3)).ok());  // n=3, q'=3
    {
        // Pi(e_i) = V(e_i) holds entrywise
        LocalContext cx = make_context(Case::unramified, 2, 3);
        TruncRing R = dieudonne_ring(cx);
        StdDieudonne mod = build_standard(cx, R);
        CHECK(mod.Pi.a == mod.V.a);
    }
    CHECK_THROWS_AS(verify_unramified_iota(make_context(Case::split, 3, 2)), domain_error);
}

TEST_CASE("ramified comparison: smallest case by hand, then all betas") {
    {
        // q = 3, n = 1: beta = g^2 in F_9
        LocalContext cx = make_context(Case::ramified, 3, 1);
        const Tower& t = cx.tower();
        TowerElem beta = t.pow(t.gen(cx.lv_q2n), 2);
        CHECK(verify_ramified_iota(cx, beta).ok());
    }
    {
        LocalContext cx = make_context(Case::ramified, 3, 3);
        for (const auto& beta : all_valid_betas(cx)) CHECK(verify_ramified_iota(cx, beta).ok());
    }
    {
        // invalid beta is reported, not silently accepted
        LocalContext cx = make_context(Case::ramified, 3, 1);
        CHECK(!verify_ramified_iota(cx, cx.tower().one(cx.lv_q2n)).ok());
    }
}

TEST_CASE("eq-char comparisons match the division-model twist data") {
    CHECK(verify_eqchar(make_context(Case::unramified, 2, 2)).ok());
    CHECK(verify_eqchar(make_context(Case::ramified, 3, 3)).ok());
    CHECK(verify_eqchar(make_context(Case::split, 3, 2)).ok());
    // distinguished odd-n choice: alpha = -1
    {
        LocalContext cx = make_context(Case::ramified, 3, 3);
        TwistData tw = make_twist_canonical_odd(cx);
        CHECK(tw.alpha == cx.tower().minus_one(cx.lv_qn));
        CHECK(verify_ramified_iota(cx, tw.beta).ok());
    }
}

TEST_CASE("twisted module of the ramified case carries -w in F' and V'") {
    LocalContext cx = make_context(Case::ramified, 3, 3);
    TruncRing R = dieudonne_ring(cx);
    StdDieudonne tw = build_twisted_ramified(cx, R);
    for (unsigned i = 0; i + 1 < 3; ++i) CHECK(tw.F.a[i + 1][i] == R.neg(R.u()));
    CHECK(tw.F.a[0][2] == R.one());
    CHECK(tw.V.a[2][0] == R.neg(R.u()));
    for (unsigned i = 1; i < 3; ++i) CHECK(tw.V.a[i - 1][i] == R.one());
}

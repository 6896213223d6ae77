#include <doctest.h>

#include "csd/framework.hpp"

using namespace csd;

TEST_CASE("builtin group models are valid") {
    CHECK(validate_model(model_cyclic(4, true)).ok());
    CHECK(validate_model(model_cyclic(4, false)).ok());
    CHECK(validate_model(model_s3()).ok());
    CHECK(validate_model(model_q8()).ok());
    CHECK(validate_model(model_product(model_cyclic(4, true), model_s3())).ok());
}

TEST_CASE("C4 with inversion twist: every character is conjugate self-dual with C = pi(t) = 1") {
    GroupModel m = model_cyclic(4, true);
    for (const auto& r : m.reps) {
        auto B = invariant_pairing(m, r, m.tw);
        REQUIRE(B.has_value());
        CHECK(rep_parity(r, m.tw, *B) == 1);
    }
    // without the twist, the faithful characters are not self-dual at all
    GroupModel mid = model_cyclic(4, false);
    CHECK(!invariant_pairing(mid, mid.reps[1], mid.tw).has_value());
    CHECK(invariant_pairing(mid, mid.reps[2], mid.tw).has_value());  // order-2 character
}

TEST_CASE("classical Frobenius-Schur indicators: S3 all orthogonal, Q8 faithful is symplectic") {
    GroupModel s3 = model_s3();
    for (const auto& r : s3.reps) {
        CHECK(fs_indicator(s3, r) == 1);
        auto B = invariant_pairing(s3, r, s3.tw);
        REQUIRE(B.has_value());
        CHECK(rep_parity(r, s3.tw, *B) == 1);
    }
    GroupModel q8 = model_q8();
    for (const auto& r : q8.reps) {
        auto B = invariant_pairing(q8, r, q8.tw);
        REQUIRE(B.has_value());
        int c = rep_parity(r, q8.tw, *B);
        CHECK(c == fs_indicator(q8, r));
        if (r.dim == 2) CHECK(c == -1);
        if (r.dim == 1) CHECK(c == 1);
    }
}

TEST_CASE("full framework suite on the three builtin models") {
    CHECK(check_framework(model_cyclic(4, true)).ok());
    CHECK(check_framework(model_s3()).ok());
    CHECK(check_framework(model_q8()).ok());
}

TEST_CASE("product multiplicativity of the parity") {
    CHECK(check_framework_product(model_cyclic(4, true), model_s3()).ok());
    CHECK(check_framework_product(model_q8(), model_s3()).ok());
    // sanity: a symplectic times a symplectic is orthogonal
    GroupModel q8 = model_q8();
    GroupModel prod = model_product(q8, q8);
    const MatRep& r22 = prod.reps.back();  // faithful2 (x) faithful2
    CHECK(r22.dim == 4);
    auto B = invariant_pairing(prod, r22, prod.tw);
    REQUIRE(B.has_value());
    CHECK(rep_parity(r22, prod.tw, *B) == 1);
}

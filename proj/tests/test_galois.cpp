#include <doctest.h>

#include "csd/galois.hpp"

#include <nlohmann/json.hpp>

using csd::AddChar;
using csd::Cyclo;
using csd::MultChar;
using csd::Tower;
using csd::TowerElem;

TEST_CASE("tower construction invariants") {
    Tower t(3, {1, 2, 6, 12});
    CHECK(t.num_levels() == 4);
    for (unsigned lv = 0; lv < t.num_levels(); ++lv) {
        // the fixed generator really has full order
        const auto& L = t.info(lv);
        TowerElem g = t.gen(lv);
        for (auto [l, e] : L.unit_factors) {
            (void)e;
            CHECK(t.pow(g, static_cast<std::int64_t>((L.size - 1) / l)) != t.one(lv));
        }
        CHECK(t.pow(g, static_cast<std::int64_t>(L.size - 1)) == t.one(lv));
    }
}

TEST_CASE("frobenius fixes F_q and acts as stated on small fields") {
    Tower t(2, {1, 2, 4});
    unsigned f4 = t.level_of_degree(2);
    // omega: primitive cube root in F_4; 2-power Frobenius sends it to omega^2
    TowerElem omega = t.gen(f4);
    CHECK(t.frobenius(omega, 1) == t.mul(omega, omega));
    // F_q fixed by its own Frobenius
    Tower t3(3, {1, 2});
    unsigned f9 = t3.level_of_degree(2);
    TowerElem g = t3.gen(f9);
    for (std::uint64_t enc = 0; enc < 3; ++enc) {
        TowerElem x = t3.from_encoding(0, enc);
        CHECK(t3.frobenius(x, 1) == x);
    }
    // sigma^2 = id on F_9
    CHECK(t3.frobenius(t3.frobenius(g, 1), 1) == g);
}

TEST_CASE("frobenius is a ring automorphism fixing exactly the subfield (exhaustive, size <= 81)") {
    Tower t(3, {1, 2, 4});
    unsigned lv = t.level_of_degree(4);
    unsigned sub = t.level_of_degree(2);
    std::uint64_t fixed = 0;
    for (std::uint64_t enc = 0; enc < t.info(lv).size; ++enc) {
        TowerElem x = t.from_encoding(lv, enc);
        TowerElem y = t.from_encoding(lv, (enc * 7 + 3) % t.info(lv).size);
        CHECK(t.frobenius_rel(t.mul(x, y), sub, 1) ==
              t.mul(t.frobenius_rel(x, sub, 1), t.frobenius_rel(y, sub, 1)));
        CHECK(t.frobenius_rel(t.add(x, y), sub, 1) ==
              t.add(t.frobenius_rel(x, sub, 1), t.frobenius_rel(y, sub, 1)));
        if (t.frobenius_rel(x, sub, 1) == x) {
            ++fixed;
            CHECK(t.in_subfield(x, sub));
        }
    }
    CHECK(fixed == t.info(sub).size);
}

TEST_CASE("norm and trace") {
    Tower t(3, {1, 2});
    unsigned f9 = t.level_of_degree(2);
    TowerElem g = t.gen(f9);
    // Nr_{F9/F3}(g) = g^{1+3} = g^4 = the unique order-2 element = 2
    CHECK(t.norm_to(g, 0) == t.from_int(0, 2));
    CHECK(t.norm_to(t.one(f9), 0) == t.one(0));

    Tower t2(2, {1, 2});
    unsigned f4 = t2.level_of_degree(2);
    TowerElem w = t2.gen(f4);
    // Tr_{F4/F2}(omega) = omega + omega^2 = 1
    CHECK(t2.trace_to(w, 0) == t2.one(0));
}

TEST_CASE("norm and trace are surjective onto the subfield (exhaustive)") {
    Tower t(3, {1, 3});
    unsigned lv = t.level_of_degree(3);
    std::vector<bool> norm_hit(3, false), trace_hit(3, false);
    for (std::uint64_t enc = 0; enc < t.info(lv).size; ++enc) {
        TowerElem x = t.from_encoding(lv, enc);
        trace_hit[t.encoding(t.trace_to(x, 0))] = true;
        if (!t.is_zero(x)) norm_hit[t.encoding(t.norm_to(x, 0))] = true;
    }
    CHECK(trace_hit == std::vector<bool>(3, true));
    CHECK(norm_hit[1]);
    CHECK(norm_hit[2]);
}

TEST_CASE("dlog") {
    Tower t(3, {1, 2});
    unsigned f9 = t.level_of_degree(2);
    TowerElem g = t.gen(f9);
    CHECK(t.dlog(t.pow(g, 5)) == 5);
    CHECK(t.dlog(t.one(f9)) == 0);
    CHECK_THROWS_AS(t.dlog(t.zero(f9)), csd::domain_error);
    // exhaustive round-trip
    for (std::uint64_t k = 0; k < 8; ++k) CHECK(t.dlog(t.pow(g, static_cast<std::int64_t>(k))) == k);
}

TEST_CASE("solve_power picks the smallest dlog") {
    Tower t(3, {1, 2});
    unsigned f9 = t.level_of_degree(2);
    // beta^{q^n-1} = -1 with q=3, n=1 inside F_9: -1 = g^4, beta = g^2
    TowerElem beta = t.solve_power(t.minus_one(f9), 2);
    CHECK(beta == t.pow(t.gen(f9), 2));
    // oracle: exhaustive smallest-dlog search
    for (std::uint64_t k = 0; k < 8; ++k) {
        TowerElem x = t.pow(t.gen(f9), static_cast<std::int64_t>(k));
        if (t.mul(x, x) == t.minus_one(f9)) {
            CHECK(k == 2);
            break;
        }
    }
    CHECK(t.solve_power(t.one(f9), 2) == t.one(f9));  // smallest-dlog tie-break
    // eta^{q'+1} = eps*xi with q'=2, eps=1, xi=1 -> eta = 1
    Tower t2(2, {1, 2});
    CHECK(t2.solve_power(t2.one(1), 3) == t2.one(1));
    // no solution: x^2 = g in F_9 (g is a non-square)
    CHECK_THROWS_AS(t.solve_power(t.gen(f9), 2), csd::domain_error);
    // all solutions, sorted by dlog
    auto sols = t.solve_power_all(t.minus_one(f9), 2);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0] == t.pow(t.gen(f9), 2));
    CHECK(sols[1] == t.pow(t.gen(f9), 6));
}

TEST_CASE("embeddings commute with Frobenius and respect norms") {
    Tower t(3, {1, 2, 6});
    unsigned f9 = t.level_of_degree(2), f729 = t.level_of_degree(6);
    TowerElem g = t.gen(f9);
    CHECK(t.embed(t.frobenius(g, 1), f729) == t.frobenius(t.embed(g, f729), 1));
    CHECK(t.embed(t.mul(g, g), f729) == t.mul(t.embed(g, f729), t.embed(g, f729)));
    CHECK(t.section(t.embed(g, f729), f9) == g);
    // an element outside the subfield has no section
    CHECK(!t.section(t.gen(f729), f9).has_value());
    // norm through the tower lands where direct computation says
    TowerElem big = t.gen(f729);
    TowerElem nm = t.norm_to(big, f9);
    CHECK(t.embed(nm, f729) == t.pow(big, (729 - 1) / (9 - 1)));
}

TEST_CASE("character evaluation") {
    Tower t(3, {1, 2});
    // trivial character
    MultChar triv{0, 0};
    CHECK(char_eval(t, triv, t.from_int(0, 2)) == Cyclo::one());
    // quadratic character on F_3^x at 2 = g: -1
    MultChar quad{0, 1};
    CHECK(char_eval(t, quad, t.from_int(0, 2)) == Cyclo::integer(-1));
    CHECK(char_eval(t, quad, t.one(0)) == Cyclo::one());
    CHECK_THROWS_AS(char_eval(t, quad, t.zero(0)), csd::domain_error);
    // psi on F_2 at 1 is -1
    Tower t2(2, {1});
    AddChar psi{0};
    CHECK(char_eval(t2, psi, t2.one(0)) == Cyclo::integer(-1));
    // psi is additive and nontrivial on F_9
    Tower t9(3, {1, 2});
    AddChar psi9{1};
    bool nontrivial = false;
    for (std::uint64_t a = 0; a < 9; ++a)
        for (std::uint64_t b = 0; b < 9; ++b) {
            TowerElem xa = t9.from_encoding(1, a), xb = t9.from_encoding(1, b);
            CHECK(char_eval(t9, psi9, t9.add(xa, xb)) ==
                  char_eval(t9, psi9, xa) * char_eval(t9, psi9, xb));
            if (char_eval(t9, psi9, xa) != Cyclo::one()) nontrivial = true;
        }
    CHECK(nontrivial);
}

TEST_CASE("chi^tau = chi^{-1} iff exponent satisfies e q' = -e mod (q-1)") {
    // unramified setting q' = 3, q = 9: tau acts on F_9 as cube
    Tower t(3, {1, 2});
    unsigned f9 = t.level_of_degree(2);
    for (std::uint64_t e = 0; e < 8; ++e) {
        MultChar chi{f9, e};
        bool exponent_cond = (e * 3 + e) % 8 == 0;
        bool pointwise = true;
        for (std::uint64_t k = 0; k < 8; ++k) {
            TowerElem x = t.pow(t.gen(f9), static_cast<std::int64_t>(k));
            if (char_eval(t, chi, t.frobenius(x, 1)) * char_eval(t, chi, x) != Cyclo::one()) {
                pointwise = false;
                break;
            }
        }
        CHECK(exponent_cond == pointwise);
    }
}

TEST_CASE("json description is reproducible") {
    Tower t(3, {1, 2, 4});
    auto j = t.describe();
    CHECK(j["p"] == 3);
    REQUIRE(j["levels"].size() == 3);
    CHECK(j["levels"][0]["degree"] == 1);
    CHECK(j["levels"][2]["size"] == 81);
    Tower t2(3, {1, 2, 4});
    CHECK(t2.describe() == j);
}

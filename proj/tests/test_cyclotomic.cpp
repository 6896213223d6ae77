#include <doctest.h>

#include "csd/cyclotomic.hpp"

#include <nlohmann/json.hpp>

#include <random>

using csd::Cyclo;
using csd::Rat;

TEST_CASE("roots of unity in canonical form") {
    CHECK(Cyclo::root_of_unity(4, 2) == Cyclo::integer(-1));
    CHECK(Cyclo::root_of_unity(12, 4) == Cyclo::root_of_unity(3, 1));  // zeta_12^4 = zeta_3
    CHECK(Cyclo::root_of_unity(1, 0) == Cyclo::one());
    CHECK(Cyclo::root_of_unity(5, -1) == Cyclo::root_of_unity(5, 4));
    CHECK_THROWS_AS(Cyclo::root_of_unity(0, 1), csd::domain_error);
}

TEST_CASE("field arithmetic on cyclotomic integers") {
    Cyclo z3 = Cyclo::root_of_unity(3, 1);
    CHECK(z3 + z3 * z3 == Cyclo::integer(-1));  // 1 + z3 + z3^2 = 0
    CHECK(Cyclo::root_of_unity(5, 1) * Cyclo::root_of_unity(5, 4) == Cyclo::one());
    CHECK(Cyclo::root_of_unity(8, 1).inv() == Cyclo::root_of_unity(8, 7));
    CHECK_THROWS_AS(Cyclo::zero().inv(), csd::domain_error);
}

TEST_CASE("mixed-modulus coercion is associative") {
    Cyclo a = Cyclo::root_of_unity(3, 1);
    Cyclo b = Cyclo::root_of_unity(4, 1);
    Cyclo c = Cyclo::root_of_unity(6, 1);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
}

TEST_CASE("as_sign accepts exactly +1 and -1") {
    CHECK(Cyclo::one().as_sign() == 1);
    CHECK(Cyclo::integer(-1).as_sign() == -1);
    CHECK(Cyclo::root_of_unity(6, 3).as_sign() == -1);  // zeta_6^3 = -1
    CHECK_THROWS_AS(Cyclo::root_of_unity(4, 1).as_sign(), csd::model_error);
    CHECK_THROWS_AS(Cyclo::integer(2).as_sign(), csd::model_error);
}

TEST_CASE("x * inv(x) == 1 on random elements") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 60; ++iter) {
        unsigned n = 1 + static_cast<unsigned>(rng() % 24);
        Cyclo x = Cyclo::zero();
        for (int t = 0; t < 3; ++t) {
            long num = static_cast<long>(rng() % 11) - 5;
            long den = 1 + static_cast<long>(rng() % 4);
            x = x + Cyclo::rational(Rat(num, den)) * Cyclo::root_of_unity(n, static_cast<long long>(rng() % n));
        }
        if (x.is_zero()) continue;
        CHECK(x * x.inv() == Cyclo::one());
    }
}

TEST_CASE("root_of_unity(N,k)^N == 1 for random N <= 60") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 40; ++iter) {
        unsigned n = 1 + static_cast<unsigned>(rng() % 60);
        long long k = static_cast<long long>(rng() % n);
        CHECK(Cyclo::root_of_unity(n, k).pow(n) == Cyclo::one());
    }
}

TEST_CASE("reduction is idempotent: rebuilding from coefficients is stable") {
    Cyclo x = Cyclo::root_of_unity(12, 7) + Cyclo::rational(Rat(3, 2));
    Cyclo y = x + Cyclo::zero();
    CHECK(x.coeffs() == y.coeffs());
    CHECK(x.modulus() == y.modulus());
}

TEST_CASE("pow handles negative exponents") {
    Cyclo z8 = Cyclo::root_of_unity(8, 1);
    CHECK(z8.pow(-3) == Cyclo::root_of_unity(8, 5));
    CHECK(z8.pow(0) == Cyclo::one());
}

TEST_CASE("json serialization shape") {
    Cyclo x = Cyclo::root_of_unity(4, 1) + Cyclo::rational(Rat(1, 2));
    auto j = x.to_json();
    CHECK(j["N"] == 4);
    REQUIRE(j["coeffs"].size() == 2);
    CHECK(j["coeffs"][0][0] == 0);
    CHECK(j["coeffs"][0][1] == "1/2");
    CHECK(j["coeffs"][1][0] == 1);
    CHECK(j["coeffs"][1][1] == "1/1");
}

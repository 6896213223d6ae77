#pragma once

#include "csd/common.hpp"

#include <nlohmann/json_fwd.hpp>

namespace csd {

/// An element of the cyclotomic field Q(zeta_N), stored in canonical form on the
/// power basis zeta^0 .. zeta^{phi(N)-1} after reduction by the N-th cyclotomic
/// polynomial. Equality of canonical forms is field equality. Values with
/// different moduli are lifted to the lcm modulus before mixed arithmetic.
class Cyclo {
public:
    Cyclo() : n_(1), c_(1) {}  // zero in Q(zeta_1) = Q

    static Cyclo rational(const Rat& r);
    static Cyclo integer(long v) { return rational(Rat(v)); }
    static Cyclo zero() { return Cyclo(); }
    static Cyclo one() { return integer(1); }
    // zeta_n^k, k reduced mod n. Throws domain_error for n = 0.
    static Cyclo root_of_unity(unsigned n, long long k);

    unsigned modulus() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    // If the value lies in Q, returns it.
    std::optional<Rat> as_rational() const;
    // +1 or -1; throws model_error otherwise (a violated sign invariant upstream).
    int as_sign() const;

    Cyclo lifted_to(unsigned n) const;  // requires modulus() | n

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo inv() const;  // throws domain_error on zero
    Cyclo pow(long long e) const;

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    std::string str() const;
    // {"N": n, "coeffs": [[k, "num/den"], ...]}
    nlohmann::json to_json() const;

private:
    unsigned n_;
    std::vector<Rat> c_;

    static const struct CycloTable& table(unsigned n);
};

std::ostream& operator<<(std::ostream& os, const Cyclo& x);

// The exponent j < order with v = zeta_order^j, if v is such a root of unity.
std::optional<long> root_of_unity_exponent(const Cyclo& v, unsigned order);

}  // namespace csd

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csd {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Violated precondition of an operation (bad caller input).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An identity the theory guarantees failed to hold; always a bug upstream.
struct model_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / b) throw domain_error("pow_u64: overflow");
        r *= b;
    }
    return r;
}

// Solves a*x = c (mod m); returns the smallest non-negative solution, or nullopt.
inline std::optional<std::uint64_t> solve_lin_mod(std::uint64_t a, std::uint64_t c, std::uint64_t m) {
    if (m == 0) throw domain_error("solve_lin_mod: zero modulus");
    if (m == 1) return 0;
    a %= m;
    c %= m;
    std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t qu = old_r / r;
        old_r -= qu * r; std::swap(old_r, r);
        old_s -= qu * s; std::swap(old_s, s);
    }
    std::uint64_t g = static_cast<std::uint64_t>(old_r);
    if (g == 0 || c % g != 0) return std::nullopt;
    std::uint64_t m1 = m / g;
    std::int64_t s0 = old_s % static_cast<std::int64_t>(m1);
    if (s0 < 0) s0 += static_cast<std::int64_t>(m1);
    // x = (c/g)*inv(a/g) mod m1
    boost::multiprecision::uint128_t x = boost::multiprecision::uint128_t(c / g) * static_cast<std::uint64_t>(s0);
    return static_cast<std::uint64_t>(x % m1);
}

// One named check inside a verification report.
struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<CheckItem> items;

    void add(std::string name, bool pass, std::string detail = "") {
        items.push_back({std::move(name), pass, std::move(detail)});
    }
    bool ok() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    std::string summary() const {
        std::ostringstream os;
        os << title << ": " << (ok() ? "pass" : "FAIL");
        for (const auto& it : items)
            if (!it.pass) os << "\n  FAIL " << it.name << (it.detail.empty() ? "" : ": " + it.detail);
        return os.str();
    }
};

}  // namespace csd

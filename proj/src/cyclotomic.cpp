#include "csd/cyclotomic.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace csd {

namespace {

unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (auto [p, e] : factorize(n)) r = r / static_cast<unsigned>(p) * (static_cast<unsigned>(p) - 1);
    return r;
}

// Integer polynomials, ascending coefficients.
using IPoly = std::vector<Int>;

// Exact division num / den of integer polynomials (den monic-leading not required,
// but the division must be exact; cyclotomic factors guarantee that).
IPoly ipoly_div_exact(IPoly num, const IPoly& den) {
    IPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (num.size() >= den.size()) {
        if (num.back() == 0) { num.pop_back(); continue; }
        Int c = num.back() / den.back();
        if (c * den.back() != num.back()) throw model_error("cyclotomic: inexact division");
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        if (num.back() != 0) throw model_error("cyclotomic: inexact division");
        num.pop_back();
    }
    for (const Int& c : num)
        if (c != 0) throw model_error("cyclotomic: inexact division");
    return q;
}

// Phi_n via Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
const IPoly& cyclotomic_poly(unsigned n) {
    static std::map<unsigned, IPoly> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::function<const IPoly&(unsigned)> get = [&](unsigned m) -> const IPoly& {
        auto jt = memo.find(m);
        if (jt != memo.end()) return jt->second;
        IPoly num(m + 1, Int(0));
        num[0] = -1;
        num[m] = 1;
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0) num = ipoly_div_exact(std::move(num), get(d));
        return memo.emplace(m, std::move(num)).first->second;
    };
    return get(n);
}

}  // namespace

struct CycloTable {
    unsigned n;
    unsigned phi;
    IPoly phi_poly;                        // Phi_n, degree phi
    std::vector<std::vector<Rat>> powers;  // x^k mod Phi_n for k in [0, max_pow]
};

const CycloTable& Cyclo::table(unsigned n) {
    static std::map<unsigned, CycloTable> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    CycloTable t;
    t.n = n;
    t.phi = euler_phi(n);
    t.phi_poly = cyclotomic_poly(n);
    unsigned max_pow = std::max(n == 0 ? 0 : n - 1, t.phi == 0 ? 0 : 2 * t.phi - 2);
    t.powers.resize(max_pow + 1);
    for (unsigned k = 0; k <= max_pow; ++k) {
        std::vector<Rat> row(t.phi, Rat(0));
        if (k < t.phi) {
            row[k] = 1;
        } else {
            // x^k = x * x^{k-1} reduced by the monic Phi_n.
            const auto& prev = t.powers[k - 1];
            std::vector<Rat> shifted(t.phi + 1, Rat(0));
            for (unsigned i = 0; i < t.phi; ++i) shifted[i + 1] = prev[i];
            Rat lead = shifted[t.phi];
            for (unsigned i = 0; i < t.phi; ++i) row[i] = shifted[i] - lead * Rat(t.phi_poly[i]);
        }
        t.powers[k] = std::move(row);
    }
    return memo.emplace(n, std::move(t)).first->second;
}

Cyclo Cyclo::rational(const Rat& r) {
    Cyclo x;
    x.c_[0] = r;
    return x;
}

Cyclo Cyclo::root_of_unity(unsigned n, long long k) {
    if (n == 0) throw domain_error("Cyclo::root_of_unity: modulus must be positive");
    long long kr = k % static_cast<long long>(n);
    if (kr < 0) kr += n;
    const CycloTable& t = table(n);
    Cyclo x;
    x.n_ = n;
    x.c_ = t.powers[static_cast<size_t>(kr)];
    return x;
}

bool Cyclo::is_zero() const {
    for (const Rat& r : c_)
        if (r != 0) return false;
    return true;
}

std::optional<Rat> Cyclo::as_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_[0];
}

int Cyclo::as_sign() const {
    auto r = as_rational();
    if (r) {
        if (*r == 1) return 1;
        if (*r == -1) return -1;
    }
    throw model_error("Cyclo::as_sign: value is not +1 or -1: " + str());
}

Cyclo Cyclo::lifted_to(unsigned n) const {
    if (n == n_) return *this;
    if (n == 0 || n % n_ != 0) throw domain_error("Cyclo::lifted_to: target modulus not a multiple");
    const CycloTable& t = table(n);
    unsigned step = n / n_;
    Cyclo out;
    out.n_ = n;
    out.c_.assign(t.phi, Rat(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        const auto& row = t.powers[j * step];  // zeta_n^{j * n/n_}
        for (unsigned i = 0; i < t.phi; ++i) out.c_[i] += c_[j] * row[i];
    }
    return out;
}

namespace {
unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }
}  // namespace

Cyclo Cyclo::operator+(const Cyclo& o) const {
    unsigned n = lcm_u(n_, o.n_);
    Cyclo a = lifted_to(n), b = o.lifted_to(n);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator-() const {
    Cyclo a = *this;
    for (Rat& r : a.c_) r = -r;
    return a;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    unsigned n = lcm_u(n_, o.n_);
    Cyclo a = lifted_to(n), b = o.lifted_to(n);
    const CycloTable& t = table(n);
    std::vector<Rat> conv(2 * t.phi - 1 > 0 ? 2 * t.phi - 1 : 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            conv[i + j] += a.c_[i] * b.c_[j];
        }
    }
    Cyclo out;
    out.n_ = n;
    out.c_.assign(t.phi, Rat(0));
    for (size_t k = 0; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        const auto& row = t.powers[k];
        for (unsigned i = 0; i < t.phi; ++i) out.c_[i] += conv[k] * row[i];
    }
    return out;
}

Cyclo Cyclo::inv() const {
    if (is_zero()) throw domain_error("Cyclo::inv: division by zero");
    // Extended Euclid in Q[x] against Phi_n (irreducible, so gcd is 1).
    const CycloTable& t = table(n_);
    using QPoly = std::vector<Rat>;
    auto trim = [](QPoly& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
    QPoly r0(t.phi_poly.size());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = Rat(t.phi_poly[i]);
    QPoly r1(c_.begin(), c_.end());
    trim(r1);
    QPoly s0{}, s1{Rat(1)};  // s-coefficients track the input polynomial
    while (!r1.empty()) {
        // divide r0 by r1
        QPoly q;
        QPoly rem = r0;
        trim(rem);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, Rat(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rat c = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] += c;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            trim(rem);
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        QPoly s2 = s0;
        s2.resize(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant), s0 * this == r0 (mod Phi_n)
    if (r0.size() != 1) throw model_error("Cyclo::inv: gcd with Phi_N not constant");
    Cyclo out;
    out.n_ = n_;
    out.c_.assign(t.phi, Rat(0));
    for (size_t i = 0; i < s0.size() && i < t.phi; ++i) out.c_[i] = s0[i] / r0[0];
    return out;
}

Cyclo Cyclo::pow(long long e) const {
    Cyclo base = *this;
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    Cyclo acc = Cyclo::one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Cyclo::operator==(const Cyclo& o) const {
    unsigned n = lcm_u(n_, o.n_);
    Cyclo a = lifted_to(n), b = o.lifted_to(n);
    return a.c_ == b.c_;
}

std::string Cyclo::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i];
        if (i > 0) os << "*z" << n_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

nlohmann::json Cyclo::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::ostringstream os;
        os << boost::multiprecision::numerator(c_[i]) << "/" << boost::multiprecision::denominator(c_[i]);
        coeffs.push_back({i, os.str()});
    }
    return nlohmann::json{{"N", n_}, {"coeffs", coeffs}};
}

std::ostream& operator<<(std::ostream& os, const Cyclo& x) { return os << x.str(); }

std::optional<long> root_of_unity_exponent(const Cyclo& v, unsigned order) {
    for (long j = 0; j < static_cast<long>(order); ++j)
        if (Cyclo::root_of_unity(order, j) == v) return j;
    return std::nullopt;
}

}  // namespace csd

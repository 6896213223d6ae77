#pragma once

#include "csd/common.hpp"
#include "csd/cyclotomic.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <mutex>
#include <unordered_map>

namespace csd {

/// Element of one level of a finite field tower: coefficients over F_p of a
/// polynomial representative reduced mod the level's irreducible modulus.
struct TowerElem {
    unsigned level = 0;
    std::vector<unsigned> c;
    bool operator==(const TowerElem&) const = default;
};

struct TowerLevelInfo {
    unsigned degree = 1;                                        // over F_p
    std::uint64_t size = 0;                                     // p^degree
    std::vector<unsigned> modulus;                              // x^d + sum modulus[i] x^i
    std::vector<unsigned> generator;                            // fixed primitive element
    std::vector<std::pair<std::uint64_t, unsigned>> unit_factors;  // factorization of size-1
    std::vector<unsigned> embed_image;                          // root of previous modulus here (empty at level 0)
};

/// A chain F_p = L_0 < L_1 < ... of finite fields with explicit irreducible
/// moduli, fixed multiplicative generators, and stored embeddings between
/// consecutive levels. Degrees must form a divisibility chain. Immutable after
/// construction; the mutable members are lazily built caches.
class Tower {
public:
    static constexpr std::uint64_t kDefaultDlogCap = 531441;  // 3^12

    Tower(unsigned p, std::vector<unsigned> degrees, std::uint64_t dlog_cap = kDefaultDlogCap);

    unsigned p() const { return p_; }
    unsigned num_levels() const { return static_cast<unsigned>(levels_.size()); }
    const TowerLevelInfo& info(unsigned lv) const { return levels_.at(lv); }
    unsigned level_of_degree(unsigned deg) const;
    std::uint64_t unit_order(unsigned lv) const { return levels_.at(lv).size - 1; }

    TowerElem zero(unsigned lv) const { return {lv, std::vector<unsigned>(levels_.at(lv).degree, 0)}; }
    TowerElem one(unsigned lv) const { return from_int(lv, 1); }
    TowerElem from_int(unsigned lv, std::uint64_t v) const;  // v mod p as a constant
    TowerElem minus_one(unsigned lv) const { return from_int(lv, p_ - 1); }
    TowerElem gen(unsigned lv) const { return {lv, levels_.at(lv).generator}; }
    // Decodes a base-p integer encoding into coefficients; enumerates the field.
    TowerElem from_encoding(unsigned lv, std::uint64_t enc) const;
    std::uint64_t encoding(const TowerElem& x) const;

    bool is_zero(const TowerElem& x) const;
    TowerElem add(const TowerElem& a, const TowerElem& b) const;
    TowerElem sub(const TowerElem& a, const TowerElem& b) const;
    TowerElem neg(const TowerElem& a) const;
    TowerElem mul(const TowerElem& a, const TowerElem& b) const;
    TowerElem inv(const TowerElem& a) const;  // throws domain_error at 0
    TowerElem div(const TowerElem& a, const TowerElem& b) const { return mul(a, inv(b)); }
    TowerElem pow(const TowerElem& a, std::int64_t e) const;
    TowerElem scalar_mul(unsigned s, const TowerElem& a) const;

    // x -> x^{p^r}; r may be negative (reduced mod the level degree).
    TowerElem frobenius(const TowerElem& x, long r) const;
    // x -> x^{(p^{deg(sub_lv)})^r}: the Frobenius relative to the subfield.
    TowerElem frobenius_rel(const TowerElem& x, unsigned sub_lv, long r) const;

    TowerElem embed(const TowerElem& x, unsigned to_lv) const;
    std::optional<TowerElem> section(const TowerElem& x, unsigned to_lv) const;
    TowerElem section_or_throw(const TowerElem& x, unsigned to_lv, const char* what) const;
    bool in_subfield(const TowerElem& x, unsigned sub_lv) const;

    // Product / sum of the Galois orbit over the subfield; result at sub_lv.
    TowerElem norm_to(const TowerElem& x, unsigned sub_lv) const;
    TowerElem trace_to(const TowerElem& x, unsigned sub_lv) const;

    // Discrete log to the fixed generator, by BSGS; throws at 0 or above the cap.
    std::uint64_t dlog(const TowerElem& x) const;
    // Smallest-dlog x with x^e = u; throws domain_error when no solution at this level.
    TowerElem solve_power(const TowerElem& u, std::uint64_t e) const;
    // All solutions, sorted by dlog.
    std::vector<TowerElem> solve_power_all(const TowerElem& u, std::uint64_t e) const;

    nlohmann::json describe() const;

private:
    unsigned p_;
    std::uint64_t dlog_cap_;
    std::vector<TowerLevelInfo> levels_;

    mutable std::recursive_mutex cache_mx_;  // guards first-touch builds of the caches below
    mutable std::map<unsigned, std::vector<std::vector<unsigned>>> frob_mat_;       // level -> p-power matrix
    mutable std::map<std::pair<unsigned, unsigned>, std::vector<std::vector<unsigned>>> embed_mat_;
    mutable std::map<unsigned, std::unordered_map<std::uint64_t, std::uint32_t>> baby_;

    const std::vector<std::vector<unsigned>>& frob_matrix(unsigned lv) const;
    const std::vector<std::vector<unsigned>>& embed_matrix(unsigned from, unsigned to) const;

    std::vector<unsigned> poly_mul(unsigned lv, const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
};

/// chi(g^k) = zeta_{q-1}^{e k} for the level's fixed generator g.
struct MultChar {
    unsigned level = 0;
    std::uint64_t exponent = 0;
};

/// psi(x) = zeta_p^{Tr_{F/F_p}(x)}; nontrivial, fixed choice.
struct AddChar {
    unsigned level = 0;
};

Cyclo char_eval(const Tower& t, const MultChar& chi, const TowerElem& x);  // throws at 0
Cyclo char_eval(const Tower& t, const AddChar& psi, const TowerElem& x);
bool mult_char_is_trivial(const Tower& t, const MultChar& chi);

}  // namespace csd

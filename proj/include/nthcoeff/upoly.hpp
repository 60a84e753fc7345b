#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "nthcoeff/fp.hpp"

namespace nth {

// Dense univariate polynomial over F_p.  Normalized: no stored trailing zero,
// the zero polynomial has an empty coefficient vector (its degree is not a
// number here; callers branch on is_zero()).
struct UniPoly {
    PrimeField F;
    std::vector<u64> c;  // c[i] multiplies x^i

    explicit UniPoly(const PrimeField& f) : F(f) {}
    UniPoly(const PrimeField& f, std::vector<u64> coeffs) : F(f), c(std::move(coeffs)) {
        for (auto& v : c) v = F.norm(v);
        trim();
    }

    static UniPoly zero(const PrimeField& f) { return UniPoly(f); }
    static UniPoly one(const PrimeField& f) { return monomial(f, 0, 1); }
    static UniPoly monomial(const PrimeField& f, std::size_t k, u64 coeff = 1);
    static UniPoly from_ints(const PrimeField& f, std::initializer_list<long long> v);

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    std::size_t nterms() const { return c.size(); }  // 0 iff zero, else degree()+1
    int degree() const;                              // requires nonzero
    std::size_t valuation() const;                   // requires nonzero
    u64 coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    u64 lc() const;  // leading coefficient, requires nonzero
    u64 eval(u64 x0) const;
    bool operator==(const UniPoly& o) const { return F.p == o.F.p && c == o.c; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }
};

UniPoly add(const UniPoly& a, const UniPoly& b);
UniPoly sub(const UniPoly& a, const UniPoly& b);
UniPoly neg(const UniPoly& a);
UniPoly scale(const UniPoly& a, u64 k);
UniPoly shift_up(const UniPoly& a, std::size_t k);  // * x^k
UniPoly upoly_mul(const UniPoly& a, const UniPoly& b);
UniPoly mul_trunc(const UniPoly& a, const UniPoly& b, std::size_t n);
UniPoly truncate(const UniPoly& a, std::size_t n);  // mod x^n
UniPoly substitute_power(const UniPoly& a, u64 e);  // x -> x^e, e >= 1
UniPoly pow_u(const UniPoly& a, u64 e);

// 1/a mod x^n; throws NotAUnit when a(0) == 0
UniPoly upoly_series_inv(const UniPoly& a, std::size_t n);

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
// quotient when the division is exact, nullopt otherwise (verified)
std::optional<UniPoly> try_exact_div(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic

// Cartier-style section: (S_r f)_k = f_{pk+r}, 0 <= r < p
UniPoly section_uni(const UniPoly& f, u64 r);

// Laurent polynomial x^val * u; canonical: u(0) != 0 unless zero (then val = 0).
struct LaurentUniPoly {
    int val = 0;
    UniPoly u;

    explicit LaurentUniPoly(const PrimeField& f) : u(f) {}
    LaurentUniPoly(int v, UniPoly poly) : val(v), u(std::move(poly)) { canon(); }

    void canon();
    bool is_zero() const { return u.is_zero(); }
    u64 coeff(long long e) const {
        return (e < val || e >= val + (long long)u.c.size()) ? 0 : u.c[std::size_t(e - val)];
    }
    bool operator==(const LaurentUniPoly& o) const { return val == o.val && u == o.u; }
};

LaurentUniPoly laurent_of(const UniPoly& p);
LaurentUniPoly laurent_add(const LaurentUniPoly& a, const LaurentUniPoly& b);
LaurentUniPoly laurent_mul_poly(const LaurentUniPoly& a, const UniPoly& b);
LaurentUniPoly laurent_substitute_power(const LaurentUniPoly& a, u64 e);
// f = neg + pos; neg carries exactly the exponents < 0
std::pair<LaurentUniPoly, UniPoly> laurent_split(const LaurentUniPoly& f);

}  // namespace nth

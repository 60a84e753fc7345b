#include "nthcoeff/upoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "nthcoeff/kernels.hpp"

namespace nth {

UniPoly UniPoly::monomial(const PrimeField& f, std::size_t k, u64 coeff) {
    UniPoly r(f);
    coeff = f.norm(coeff);
    if (coeff) {
        r.c.assign(k + 1, 0);
        r.c[k] = coeff;
    }
    return r;
}

UniPoly UniPoly::from_ints(const PrimeField& f, std::initializer_list<long long> v) {
    UniPoly r(f);
    r.c.reserve(v.size());
    for (long long x : v) r.c.push_back(f.norm_int(x));
    r.trim();
    return r;
}

int UniPoly::degree() const {
    if (is_zero()) throw std::logic_error("degree of zero polynomial");
    return int(c.size()) - 1;
}

std::size_t UniPoly::valuation() const {
    if (is_zero()) throw std::logic_error("valuation of zero polynomial");
    std::size_t v = 0;
    while (c[v] == 0) ++v;
    return v;
}

u64 UniPoly::lc() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return c.back();
}

u64 UniPoly::eval(u64 x0) const {
    u64 r = 0;
    x0 = F.norm(x0);
    for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x0), c[i]);
    return r;
}

UniPoly add(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

UniPoly sub(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F.sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

UniPoly neg(const UniPoly& a) {
    UniPoly r = a;
    for (auto& v : r.c) v = a.F.neg(v);
    return r;
}

UniPoly scale(const UniPoly& a, u64 k) {
    k = a.F.norm(k);
    UniPoly r(a.F);
    if (!k) return r;
    r.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.F.mul(a.c[i], k);
    r.trim();
    return r;
}

UniPoly shift_up(const UniPoly& a, std::size_t k) {
    if (a.is_zero()) return a;
    UniPoly r(a.F);
    r.c.assign(a.c.size() + k, 0);
    std::copy(a.c.begin(), a.c.end(), r.c.begin() + k);
    return r;
}

UniPoly upoly_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.F);
    if (a.is_zero() || b.is_zero()) return r;
    r.c = kernels::mul_vec(a.F, a.c, b.c);
    r.trim();
    return r;
}

UniPoly truncate(const UniPoly& a, std::size_t n) {
    UniPoly r = a;
    if (r.c.size() > n) r.c.resize(n);
    r.trim();
    return r;
}

UniPoly mul_trunc(const UniPoly& a, const UniPoly& b, std::size_t n) {
    return truncate(upoly_mul(truncate(a, n), truncate(b, n)), n);
}

UniPoly substitute_power(const UniPoly& a, u64 e) {
    if (e == 0) throw std::logic_error("substitute_power needs e >= 1");
    if (a.is_zero() || e == 1) return a;
    UniPoly r(a.F);
    r.c.assign((a.c.size() - 1) * e + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * e] = a.c[i];
    return r;
}

UniPoly pow_u(const UniPoly& a, u64 e) {
    UniPoly r = UniPoly::one(a.F), base = a;
    while (e) {
        if (e & 1) r = upoly_mul(r, base);
        e >>= 1;
        if (e) base = upoly_mul(base, base);
    }
    return r;
}

UniPoly upoly_series_inv(const UniPoly& a, std::size_t n) {
    if (a.is_zero() || a.c[0] == 0) throw NotAUnit();
    UniPoly g = UniPoly::monomial(a.F, 0, a.F.inv(a.c[0]));
    if (n == 0) return UniPoly::zero(a.F);
    std::size_t prec = 1;
    const UniPoly two = UniPoly::monomial(a.F, 0, a.F.norm(2));
    while (prec < n) {
        prec = std::min(prec * 2, n);
        UniPoly t = mul_trunc(a, g, prec);
        t = sub(two, t);
        g = mul_trunc(g, t, prec);
    }
    return g;
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::logic_error("division by zero polynomial");
    UniPoly q(a.F), r = a;
    if (a.is_zero() || a.c.size() < b.c.size()) return {q, r};
    const u64 linv = a.F.inv(b.lc());
    q.c.assign(a.c.size() - b.c.size() + 1, 0);
    for (std::size_t k = q.c.size(); k-- > 0;) {
        u64 top = r.coeff(k + b.c.size() - 1);
        if (!top) continue;
        u64 qc = a.F.mul(top, linv);
        q.c[k] = qc;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r.c[k + i] = a.F.sub(r.c[k + i], a.F.mul(qc, b.c[i]));
    }
    kernels::add_work(u64(q.c.size()) * b.c.size());
    q.trim();
    r.trim();
    return {q, r};
}

// Exact division through truncated series; one multiply-back verifies it.
std::optional<UniPoly> try_exact_div(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return UniPoly::zero(a.F);
    if (a.c.size() < b.c.size()) return std::nullopt;
    std::size_t va = a.valuation(), vb = b.valuation();
    if (va < vb) return std::nullopt;
    UniPoly num(a.F), den(a.F);
    num.c.assign(a.c.begin() + va, a.c.end());
    den.c.assign(b.c.begin() + vb, b.c.end());
    std::size_t qn = num.c.size() - den.c.size() + 1;
    UniPoly q = mul_trunc(num, upoly_series_inv(den, qn), qn);
    if (upoly_mul(q, den) != num) return std::nullopt;
    return shift_up(q, va - vb);
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.is_zero() && x.lc() != 1) x = scale(x, x.F.inv(x.lc()));
    return x;
}

UniPoly section_uni(const UniPoly& f, u64 r) {
    const u64 p = f.F.p;
    if (r >= p) throw BadDigit();
    UniPoly s(f.F);
    if (f.c.size() > r) {
        s.c.reserve((f.c.size() - r + p - 1) / p);
        for (std::size_t k = r; k < f.c.size(); k += p) s.c.push_back(f.c[k]);
    }
    s.trim();
    return s;
}

void LaurentUniPoly::canon() {
    if (u.is_zero()) {
        val = 0;
        return;
    }
    std::size_t v = u.valuation();
    if (v) {
        u.c.erase(u.c.begin(), u.c.begin() + v);
        val += int(v);
    }
}

LaurentUniPoly laurent_of(const UniPoly& p) { return LaurentUniPoly(0, p); }

LaurentUniPoly laurent_add(const LaurentUniPoly& a, const LaurentUniPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.val, b.val);
    UniPoly s = add(shift_up(a.u, std::size_t(a.val - lo)), shift_up(b.u, std::size_t(b.val - lo)));
    return LaurentUniPoly(lo, std::move(s));
}

LaurentUniPoly laurent_mul_poly(const LaurentUniPoly& a, const UniPoly& b) {
    return LaurentUniPoly(a.val, upoly_mul(a.u, b));
}

LaurentUniPoly laurent_substitute_power(const LaurentUniPoly& a, u64 e) {
    if (a.is_zero()) return a;
    return LaurentUniPoly(a.val * int(e), substitute_power(a.u, e));
}

std::pair<LaurentUniPoly, UniPoly> laurent_split(const LaurentUniPoly& f) {
    LaurentUniPoly negp(f.u.F);
    UniPoly pos(f.u.F);
    if (f.is_zero()) return {negp, pos};
    if (f.val >= 0) return {negp, shift_up(f.u, std::size_t(f.val))};
    std::size_t ncut = std::min(f.u.c.size(), std::size_t(-f.val));
    UniPoly lowpart(f.u.F);
    lowpart.c.assign(f.u.c.begin(), f.u.c.begin() + ncut);
    lowpart.trim();
    negp = LaurentUniPoly(f.val, std::move(lowpart));
    if (f.u.c.size() > ncut) {
        pos.c.assign(f.u.c.begin() + ncut, f.u.c.end());
        pos.trim();
    }
    return {negp, pos};
}

}  // namespace nth

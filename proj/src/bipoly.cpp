#include "nthcoeff/bipoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/kernels.hpp"

namespace nth {

BiPoly BiPoly::constant(const PrimeField& f, u64 c) {
    BiPoly r(f);
    c = f.norm(c);
    if (c) {
        r.nx = r.ny = 1;
        r.a.assign(1, c);
    }
    return r;
}

int BiPoly::degx() const {
    if (is_zero()) throw std::logic_error("degx of zero polynomial");
    return int(nx) - 1;
}

int BiPoly::degy() const {
    if (is_zero()) throw std::logic_error("degy of zero polynomial");
    return int(ny) - 1;
}

void BiPoly::trim() {
    std::size_t mx = 0, my = 0;
    bool any = false;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            if (a[j * nx + i]) {
                any = true;
                mx = std::max(mx, i + 1);
                my = std::max(my, j + 1);
            }
    if (!any) {
        nx = ny = 0;
        a.clear();
        return;
    }
    if (mx == nx && my == ny) return;
    std::vector<u64> b(mx * my);
    for (std::size_t j = 0; j < my; ++j)
        std::copy(a.begin() + j * nx, a.begin() + j * nx + mx, b.begin() + j * mx);
    a = std::move(b);
    nx = mx;
    ny = my;
}

UniPoly BiPoly::y_coeff(std::size_t j) const {
    UniPoly r(F);
    if (j < ny) {
        r.c.assign(a.begin() + j * nx, a.begin() + (j + 1) * nx);
        r.trim();
    }
    return r;
}

BiPoly BiPoly::from_y_coeffs(const PrimeField& f, const std::vector<UniPoly>& rows) {
    std::size_t mx = 0, my = 0;
    for (std::size_t j = 0; j < rows.size(); ++j)
        if (!rows[j].is_zero()) {
            mx = std::max(mx, rows[j].c.size());
            my = j + 1;
        }
    BiPoly r(f);
    if (!my) return r;
    r.nx = mx;
    r.ny = my;
    r.a.assign(mx * my, 0);
    for (std::size_t j = 0; j < my; ++j)
        std::copy(rows[j].c.begin(), rows[j].c.end(), r.a.begin() + j * mx);
    return r;
}

BiPoly BiPoly::dy() const {
    BiPoly r(F);
    if (ny <= 1) return r;
    r.nx = nx;
    r.ny = ny - 1;
    r.a.assign(r.nx * r.ny, 0);
    for (std::size_t j = 1; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            r.a[(j - 1) * nx + i] = F.mul(a[j * nx + i], F.norm(j));
    r.trim();
    return r;
}

u64 BiPoly::eval(u64 x0, u64 y0) const {
    u64 r = 0;
    y0 = F.norm(y0);
    for (std::size_t j = ny; j-- > 0;) r = F.add(F.mul(r, y0), y_coeff(j).eval(x0));
    return r;
}

BiPoly bipoly_add(const BiPoly& u, const BiPoly& v) {
    BiPoly r(u.F, std::max(u.nx, v.nx), std::max(u.ny, v.ny));
    for (std::size_t j = 0; j < r.ny; ++j)
        for (std::size_t i = 0; i < r.nx; ++i) r.ref(i, j) = u.F.add(u.at(i, j), v.at(i, j));
    r.trim();
    return r;
}

BiPoly bipoly_sub(const BiPoly& u, const BiPoly& v) {
    BiPoly r(u.F, std::max(u.nx, v.nx), std::max(u.ny, v.ny));
    for (std::size_t j = 0; j < r.ny; ++j)
        for (std::size_t i = 0; i < r.nx; ++i) r.ref(i, j) = u.F.sub(u.at(i, j), v.at(i, j));
    r.trim();
    return r;
}

BiPoly bipoly_neg(const BiPoly& u) {
    BiPoly r = u;
    for (auto& x : r.a) x = u.F.neg(x);
    return r;
}

BiPoly bipoly_scale(const BiPoly& u, u64 k) {
    k = u.F.norm(k);
    if (!k) return BiPoly::zero(u.F);
    BiPoly r = u;
    for (auto& x : r.a) x = u.F.mul(x, k);
    r.trim();
    return r;
}

BiPoly bipoly_mul(const BiPoly& u, const BiPoly& v) {
    BiPoly r(u.F);
    if (u.is_zero() || v.is_zero()) return r;
    // pack both factors as univariate polynomials with y -> x^K
    const std::size_t K = u.nx + v.nx - 1;
    std::vector<u64> pu((u.ny - 1) * K + u.nx, 0), pv((v.ny - 1) * K + v.nx, 0);
    for (std::size_t j = 0; j < u.ny; ++j)
        std::copy(u.a.begin() + j * u.nx, u.a.begin() + (j + 1) * u.nx, pu.begin() + j * K);
    for (std::size_t j = 0; j < v.ny; ++j)
        std::copy(v.a.begin() + j * v.nx, v.a.begin() + (j + 1) * v.nx, pv.begin() + j * K);
    r.nx = K;
    r.ny = u.ny + v.ny - 1;
    r.a.assign(r.nx * r.ny, 0);
    kernels::mul(u.F, pu.data(), pu.size(), pv.data(), pv.size(), r.a.data());
    r.trim();
    return r;
}

BiPoly section_bi(const BiPoly& v, u64 r) {
    const u64 p = v.F.p;
    if (r >= p) throw BadDigit();
    BiPoly s(v.F);
    if (v.is_zero()) return s;
    s.nx = v.nx > r ? std::size_t((v.nx - 1 - r) / p + 1) : 0;
    s.ny = v.ny > r ? std::size_t((v.ny - 1 - r) / p + 1) : 0;
    if (!s.nx || !s.ny) {
        s.nx = s.ny = 0;
        return s;
    }
    s.a.assign(s.nx * s.ny, 0);
    for (std::size_t l = 0; l < s.ny; ++l)
        for (std::size_t k = 0; k < s.nx; ++k) s.ref(k, l) = v.at(p * k + r, p * l + r);
    s.trim();
    return s;
}

namespace {

// rows * rows -> rows, through the Kronecker product
std::vector<UniPoly> mul_rows(const PrimeField& F, const std::vector<UniPoly>& A,
                              const std::vector<UniPoly>& B) {
    BiPoly prod = bipoly_mul(BiPoly::from_y_coeffs(F, A), BiPoly::from_y_coeffs(F, B));
    std::size_t n = prod.is_zero() ? 0 : prod.ny;
    std::vector<UniPoly> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(prod.y_coeff(j));
    return out;
}

// One pass of fraction-free reduction: clears all y-degrees >= d in place,
// bumping the tracked denominator exponent once per nonzero cleared term.
void reduce_rows(std::vector<UniPoly>& P, const std::vector<UniPoly>& elow, const UniPoly& ed,
                 std::size_t d, u64& m) {
    while (P.size() > d && P.back().is_zero()) P.pop_back();
    while (P.size() > d) {
        const std::size_t t = P.size() - 1;
        UniPoly ct = std::move(P.back());
        P.pop_back();
        for (auto& q : P) q = upoly_mul(q, ed);
        for (std::size_t i = 0; i < d; ++i)
            P[t - d + i] = sub(P[t - d + i], upoly_mul(ct, elow[i]));
        ++m;
        while (P.size() > d && P.back().is_zero()) P.pop_back();
    }
    P.resize(d, UniPoly::zero(ed.F));
}

}  // namespace

std::pair<std::vector<UniPoly>, u64> bipoly_powmod_y(const BiPoly& E, u64 D) {
    if (E.is_zero() || E.degy() < 1) throw InvalidInput("powmod modulus must have positive y-degree");
    const std::size_t d = std::size_t(E.degy());
    const PrimeField& F = E.F;
    std::vector<UniPoly> elow(d, UniPoly(F));
    for (std::size_t i = 0; i < d; ++i) elow[i] = E.y_coeff(i);
    const UniPoly ed = E.y_coeff(d);

    std::vector<UniPoly> val(d, UniPoly(F));
    u64 m = 0;
    if (D < d) {
        val[std::size_t(D)] = UniPoly::one(F);
        return {val, 0};
    }
    // binary powering over the bits of D, most significant first
    int top = 63;
    while (!((D >> top) & 1)) --top;
    val[d > 1 ? 1 : 0] = UniPoly::one(F);
    if (d == 1) {
        val[0] = neg(elow[0]);
        m = 1;
    }
    for (int bit = top - 1; bit >= 0; --bit) {
        std::vector<UniPoly> sq = mul_rows(F, val, val);
        m *= 2;
        if ((D >> bit) & 1) {
            sq.insert(sq.begin(), UniPoly::zero(F));
        }
        reduce_rows(sq, elow, ed, d, m);
        val = std::move(sq);
    }
    const u64 canon = D - d + 1;
    if (m > canon) throw std::logic_error("reduction exponent exceeded canonical bound");
    if (m < canon) {
        UniPoly fix = pow_u(ed, canon - m);
        for (auto& q : val) q = upoly_mul(q, fix);
    }
    return {val, canon};
}

void check_algebraic_input(const BiPoly& E) {
    if (E.is_zero() || E.ny < 2) throw InvalidInput("equation must involve y");
    if (E.at(0, 0) != 0) throw InvalidInput("equation must satisfy E(0,0) = 0");
    if (E.at(0, 1) == 0) throw InvalidInput("equation must satisfy E_y(0,0) != 0");
}

}  // namespace nth

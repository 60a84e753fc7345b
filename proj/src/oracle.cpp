#include "nthcoeff/oracle.hpp"

#include <algorithm>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/kernels.hpp"

namespace nth {

namespace {

// E(x, g) mod x^prec for a series g, by Horner over the y-coefficients
UniPoly eval_at_series(const BiPoly& E, const UniPoly& g, std::size_t prec) {
    const PrimeField& F = E.F;
    UniPoly r(F);
    for (std::size_t j = E.ny; j-- > 0;) {
        r = mul_trunc(r, g, prec);
        r = add(r, truncate(E.y_coeff(j), prec));
    }
    return r;
}

}  // namespace

SeriesPrefix expand_newton(const BiPoly& E, std::size_t n, int* iterations) {
    check_algebraic_input(E);
    if (n < 1) throw InvalidInput("precision must be at least 1");
    const PrimeField& F = E.F;
    BiPoly Ey = E.dy();
    UniPoly y = UniPoly::zero(F);  // correct mod x^1
    std::size_t prec = 1;
    int rounds = 0;
    while (prec < n) {
        prec = std::min(prec * 2, n);
        UniPoly val = eval_at_series(E, y, prec);
        UniPoly der = eval_at_series(Ey, y, prec);
        y = truncate(sub(y, mul_trunc(val, upoly_series_inv(der, prec), prec)), prec);
        ++rounds;
    }
    if (iterations) *iterations = rounds;
    return {std::move(y), n};
}

SeriesPrefix expand_undetermined(const BiPoly& E, std::size_t n) {
    check_algebraic_input(E);
    if (n < 1) throw InvalidInput("precision must be at least 1");
    const PrimeField& F = E.F;
    const std::size_t d = std::size_t(E.degy());
    const u64 inv_e10 = F.inv(E.at(0, 1));

    // binomials C(j,i) mod p for j <= d
    std::vector<std::vector<u64>> binom(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        binom[j].assign(j + 1, 1);
        for (std::size_t i = 1; i < j; ++i)
            binom[j][i] = F.add(binom[j - 1][i - 1], binom[j - 1][i]);
    }

    std::vector<UniPoly> rows(d + 1, UniPoly(F));
    for (std::size_t j = 0; j <= d; ++j) rows[j] = E.y_coeff(j);

    // P[j] = (partial f)^j mod x^n, updated in place as coefficients appear
    std::vector<std::vector<u64>> P(d + 1, std::vector<u64>(n, 0));
    P[0][0] = 1;

    for (std::size_t m = 1; m < n; ++m) {
        u64 r = 0;
        for (std::size_t j = 0; j <= d; ++j) {
            const UniPoly& row = rows[j];
            std::size_t lim = std::min(row.c.size(), m + 1);
            for (std::size_t i = 0; i < lim; ++i)
                if (row.c[i]) r = F.add(r, F.mul(row.c[i], P[j][m - i]));
        }
        u64 c = F.mul(F.neg(r), inv_e10);
        if (c) {
            // new P_j needs the not-yet-updated lower powers: descend
            for (std::size_t j = d; j >= 2; --j) {
                u64 ci = 1;
                for (std::size_t i = 1; i <= j; ++i) {
                    ci = F.mul(ci, c);
                    if (i * m >= n) break;
                    u64 w = F.mul(binom[j][i], ci);
                    if (!w) continue;
                    const auto& src = P[j - i];
                    auto& dst = P[j];
                    for (std::size_t k = 0; k + i * m < n; ++k)
                        if (src[k]) dst[k + i * m] = F.add(dst[k + i * m], F.mul(w, src[k]));
                }
            }
        }
        P[1][m] = c;
    }

    UniPoly f(F);
    f.c = P[1];
    f.trim();
    return {std::move(f), n};
}

namespace {

u64 binom_digit(const PrimeField& F, u64 a, u64 b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    u64 num = 1, den = 1;
    for (u64 i = 1; i <= b; ++i) {
        num = F.mul(num, F.norm(a - b + i));
        den = F.mul(den, F.norm(i));
    }
    return F.mul(num, F.inv(den));
}

u64 lucas_binom(const PrimeField& F, const BigIndex& a, const BigIndex& b) {
    BigIndex ta = a, tb = b;
    u64 r = 1;
    while (!tb.is_zero()) {
        u64 da = ta.divmod_small(F.p), db = tb.divmod_small(F.p);
        r = F.mul(r, binom_digit(F, da, db));
        if (!r) return 0;
    }
    return r;
}

}  // namespace

u64 catalan_mod_p(const BigIndex& N, const PrimeField& F) {
    if (N.is_zero()) return 0;
    BigIndex n = N;
    n.sub_small(1);
    BigIndex two_n = n;
    two_n.mul_small(2);
    BigIndex n1 = n;
    n1.add_small(1);
    return F.sub(lucas_binom(F, two_n, n), lucas_binom(F, two_n, n1));
}

}  // namespace nth

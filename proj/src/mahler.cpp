#include "nthcoeff/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/oracle.hpp"

namespace nth {

namespace {

constexpr std::size_t MAX_MONIC_DEGREE = 40u << 20;

UniPoly exact_div_or_die(const UniPoly& a, const UniPoly& b) {
    auto q = try_exact_div(a, b);
    if (!q) throw std::logic_error("division expected to be exact was not");
    return *q;
}

// Fraction-free (Bareiss) elimination on a copy; returns the rank and, for
// the rows that were reduced, which columns carried the pivots.
std::pair<std::size_t, std::vector<std::size_t>> bareiss_rank(
    std::vector<std::vector<UniPoly>> m, const PrimeField& F) {
    const std::size_t R = m.size(), C = R ? m[0].size() : 0;
    std::vector<std::size_t> cols(C);
    for (std::size_t j = 0; j < C; ++j) cols[j] = j;
    UniPoly prev = UniPoly::one(F);
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t k = 0; k < std::min(R, C); ++k) {
        std::size_t pr = R, pc = C;
        for (std::size_t i = k; i < R && pr == R; ++i)
            for (std::size_t j = k; j < C; ++j)
                if (!m[i][j].is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == R) break;
        std::swap(m[k], m[pr]);
        for (auto& row : m) std::swap(row[k], row[pc]);
        std::swap(cols[k], cols[pc]);
        pivot_cols.push_back(cols[k]);
        ++rank;
        for (std::size_t i = k + 1; i < R; ++i) {
            for (std::size_t j = k + 1; j < C; ++j)
                m[i][j] = exact_div_or_die(
                    sub(upoly_mul(m[k][k], m[i][j]), upoly_mul(m[i][k], m[k][j])), prev);
            m[i][k] = UniPoly::zero(F);
        }
        prev = m[k][k];
    }
    return {rank, pivot_cols};
}

// Determinant of a square polynomial matrix by fraction-free elimination.
UniPoly bareiss_det(std::vector<std::vector<UniPoly>> m, const PrimeField& F) {
    const std::size_t n = m.size();
    if (n == 0) return UniPoly::one(F);
    UniPoly prev = UniPoly::one(F);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pr = n;
        for (std::size_t i = k; i < n; ++i)
            if (!m[i][k].is_zero()) {
                pr = i;
                break;
            }
        if (pr == n) return UniPoly::zero(F);
        if (pr != k) {
            std::swap(m[k], m[pr]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div_or_die(
                    sub(upoly_mul(m[k][k], m[i][j]), upoly_mul(m[i][k], m[k][j])), prev);
            m[i][k] = UniPoly::zero(F);
        }
        prev = m[k][k];
    }
    UniPoly det = m[n - 1][n - 1];
    return negate ? neg(det) : det;
}

u64 mul_checked(u64 a, u64 b) {
    if (b && a > (u64(1) << 62) / b) throw InvalidInput("mahler pipeline sizes overflow");
    return a * b;
}

// --- y-separable part ------------------------------------------------------
// E is handled as a vector of y-coefficients; index = power of y.

using YRows = std::vector<UniPoly>;

int rows_ydeg(const YRows& r) {
    for (std::size_t j = r.size(); j-- > 0;)
        if (!r[j].is_zero()) return int(j);
    return -1;
}

YRows rows_of(const BiPoly& E) {
    YRows r;
    for (int j = 0; j <= E.degy(); ++j) r.push_back(E.y_coeff(std::size_t(j)));
    return r;
}

// divide out the common x-factor of all rows (no-op on all-zero input)
YRows primitive_rows(YRows r) {
    UniPoly g(r.empty() ? PrimeField() : r[0].F);
    for (const UniPoly& q : r) {
        if (q.is_zero()) continue;
        g = g.is_zero() ? q : gcd(g, q);
        if (!g.is_zero() && g.degree() == 0) return r;
    }
    if (!g.is_zero() && g.degree() > 0)
        for (UniPoly& q : r)
            if (!q.is_zero()) q = exact_div_or_die(q, g);
    return r;
}

// pseudo-remainder in y: repeats r <- lc(B) r - r_top y^(da-db) B
YRows prem_rows(YRows A, const YRows& B, const PrimeField& F) {
    const int dB = rows_ydeg(B);
    const UniPoly& lb = B[std::size_t(dB)];
    for (int dA = rows_ydeg(A); dA >= dB; dA = rows_ydeg(A)) {
        const UniPoly top = A[std::size_t(dA)];
        for (UniPoly& q : A) q = upoly_mul(q, lb);
        for (int j = 0; j <= dB; ++j) {
            const std::size_t at = std::size_t(dA - dB + j);
            A[at] = sub(A[at], upoly_mul(top, B[std::size_t(j)]));
        }
        A[std::size_t(dA)] = UniPoly(F);
    }
    return A;
}

// gcd in F_p(x)[y] of primitive inputs, primitive-PRS; a y-constant
// remainder means the inputs are coprime in y.
YRows gcd_rows(YRows A, YRows B, const PrimeField& F) {
    if (rows_ydeg(A) < rows_ydeg(B)) std::swap(A, B);
    while (rows_ydeg(B) >= 0) {
        if (rows_ydeg(B) == 0) return YRows{UniPoly::one(F)};
        YRows R = primitive_rows(prem_rows(A, B, F));
        A = std::move(B);
        B = std::move(R);
    }
    return A;
}

// quotient of an exact division in F_p(x)[y], up to x-content
YRows pseudo_quot_rows(YRows A, const YRows& G, const PrimeField& F) {
    const int dG = rows_ydeg(G);
    const UniPoly& lg = G[std::size_t(dG)];
    const int dA = rows_ydeg(A);
    if (dA < dG) throw std::logic_error("separable part lost the series branch");
    YRows Q(std::size_t(dA - dG) + 1, UniPoly(F));
    for (int da = dA; da >= dG; da = rows_ydeg(A)) {
        const UniPoly top = A[std::size_t(da)];
        for (UniPoly& q : Q) q = upoly_mul(q, lg);
        Q[std::size_t(da - dG)] = add(Q[std::size_t(da - dG)], top);
        for (UniPoly& q : A) q = upoly_mul(q, lg);
        for (int j = 0; j <= dG; ++j) {
            const std::size_t at = std::size_t(da - dG + j);
            A[at] = sub(A[at], upoly_mul(top, G[std::size_t(j)]));
        }
        A[std::size_t(da)] = UniPoly(F);
    }
    if (rows_ydeg(A) >= 0) throw std::logic_error("separable-part division left a remainder");
    return Q;
}

// E divided by gcd_y(E, E_y): squarefree with every factor separable in y.
// The power-series branch survives: the gcd divides E_y, and E_y(x, f) is a
// unit series, so f is never a root of the gcd.  The input contract is
// preserved for the same reason (the gcd has a nonzero constant term).
BiPoly separable_part_y(const BiPoly& E) {
    const PrimeField& F = E.F;
    YRows rowsE = primitive_rows(rows_of(E));
    YRows rowsD = rows_of(E.dy());
    if (rows_ydeg(rowsD) < 0)
        throw std::logic_error("E_y vanished despite the input check");
    const YRows G = gcd_rows(rowsE, primitive_rows(std::move(rowsD)), F);
    if (rows_ydeg(G) <= 0) return BiPoly::from_y_coeffs(F, rowsE);
    return BiPoly::from_y_coeffs(F, primitive_rows(pseudo_quot_rows(std::move(rowsE), G, F)));
}

// Minimal dependence when only a rational branch survives: f = -q_0/q_1
// satisfies q_0(x^p) q_1 f - q_0 q_1(x^p) f(x^p) = 0; a vanishing q_0 means
// f is the zero series, annihilated by c_0 = 1 alone.
MahlerEquation rational_dependence(const BiPoly& E) {
    const PrimeField& F = E.F;
    const UniPoly q0 = E.y_coeff(0), q1 = E.y_coeff(1);
    MahlerEquation meq;
    if (q0.is_zero()) {
        meq.K = 0;
        meq.c = {UniPoly::one(F)};
        return meq;
    }
    meq.K = 1;
    meq.c = {upoly_mul(substitute_power(q0, F.p), q1),
             neg(upoly_mul(q0, substitute_power(q1, F.p)))};
    return meq;
}

// Unnormalized minimal dependence among y^{p^k} mod E for y-degree >= 2.
// Correctness of the head term needs the quotient algebra etale, which
// separable_part_y guarantees.
MahlerEquation frobenius_dependence(const BiPoly& E) {
    const PrimeField& F = E.F;
    const std::size_t d = std::size_t(E.degy());
    const u64 p = F.p;
    const UniPoly ed = E.y_coeff(d);

    // fraction-free y^{p i} mod E, i < d, brought to a common denominator
    // exponent M of the leading y-coefficient
    std::vector<std::vector<UniPoly>> W(d);
    std::vector<u64> expo(d);
    u64 M = 0;
    for (std::size_t i = 0; i < d; ++i) {
        auto [rows, e] = bipoly_powmod_y(E, mul_checked(p, i));
        W[i] = std::move(rows);
        expo[i] = e;
        M = std::max(M, e);
    }
    for (std::size_t i = 0; i < d; ++i)
        if (expo[i] < M) {
            UniPoly fix = pow_u(ed, M - expo[i]);
            for (auto& q : W[i]) q = upoly_mul(q, fix);
        }

    // remainder rows: nu_0 = y; nu_s = sum_i nu_{s-1,i}(x^p) * W_i.
    // Row s carries the implicit denominator (prod_{j<s} e_d(x^{p^j}))^M.
    std::vector<std::vector<UniPoly>> nu;
    {
        std::vector<UniPoly> r0(d, UniPoly(F));
        if (d > 1) r0[1] = UniPoly::one(F);
        nu.push_back(std::move(r0));
    }
    std::size_t K = 0;
    for (std::size_t s = 1; s <= d; ++s) {
        std::vector<UniPoly> row(d, UniPoly(F));
        for (std::size_t i = 0; i < d; ++i) {
            if (nu[s - 1][i].is_zero()) continue;
            UniPoly lift = substitute_power(nu[s - 1][i], p);
            for (std::size_t j = 0; j < d; ++j)
                if (!W[i][j].is_zero()) row[j] = add(row[j], upoly_mul(lift, W[i][j]));
        }
        nu.push_back(std::move(row));
        auto [rank, pc] = bareiss_rank(nu, F);
        if (rank < s + 1) {
            K = s;
            break;
        }
    }
    if (K == 0) throw std::logic_error("no dependence up to order d; impossible by theory");

    // pivot columns of the independent first K rows
    std::vector<std::vector<UniPoly>> head(nu.begin(), nu.begin() + K);
    auto [hrank, cols] = bareiss_rank(head, F);
    if (hrank != K) throw std::logic_error("first K remainders must be independent");

    // dependency by signed maximal minors over the pivot columns
    std::vector<UniPoly> lambda(K + 1, UniPoly(F));
    for (std::size_t t = 0; t <= K; ++t) {
        std::vector<std::vector<UniPoly>> mt;
        for (std::size_t s = 0; s <= K; ++s) {
            if (s == t) continue;
            std::vector<UniPoly> r;
            for (std::size_t j : cols) r.push_back(nu[s][j]);
            mt.push_back(std::move(r));
        }
        UniPoly det = bareiss_det(std::move(mt), F);
        lambda[t] = (t % 2) ? neg(det) : det;
    }
    for (std::size_t j = 0; j < d; ++j) {
        UniPoly acc(F);
        for (std::size_t t = 0; t <= K; ++t) acc = add(acc, upoly_mul(lambda[t], nu[t][j]));
        if (!acc.is_zero()) throw std::logic_error("minor combination fails to annihilate rows");
    }

    // restore the per-row denominators as numerator factors
    MahlerEquation meq;
    meq.K = K;
    meq.c.assign(K + 1, UniPoly(F));
    const UniPoly edM = pow_u(ed, M);
    UniPoly growth = UniPoly::one(F);
    u64 pt = 1;
    for (std::size_t t = 0; t <= K; ++t) {
        meq.c[t] = upoly_mul(lambda[t], growth);
        if (t < K && !edM.is_zero() && edM.degree() > 0 &&
            mul_checked(u64(edM.degree()), pt) > MAX_MONIC_DEGREE)
            throw InvalidInput("mahler coefficients too large to materialize");
        if (t < K) {
            growth = upoly_mul(growth, substitute_power(edM, pt));
            pt = mul_checked(pt, p);
        }
    }
    return meq;
}

}  // namespace

MahlerEquation algeq_to_mahler(const BiPoly& E_in) {
    check_algebraic_input(E_in);
    // Repeated and y-inseparable factors make the quotient algebra
    // non-etale, and the head term of its minimal Frobenius dependence can
    // then legitimately vanish; the power-series branch never lies in such a
    // factor, so they are stripped before the elimination.
    const BiPoly E = separable_part_y(E_in);
    const PrimeField& F = E.F;
    MahlerEquation meq = E.degy() == 1 ? rational_dependence(E) : frobenius_dependence(E);
    const std::size_t K = meq.K;

    // primitive tuple: strip the common x-power, divide by the gcd, make c_K
    // monic-leading
    std::size_t vmin = SIZE_MAX;
    for (auto& c : meq.c)
        if (!c.is_zero()) vmin = std::min(vmin, c.valuation());
    if (vmin != SIZE_MAX && vmin > 0)
        for (auto& c : meq.c)
            if (!c.is_zero()) c.c.erase(c.c.begin(), c.c.begin() + vmin);
    UniPoly content(F);
    for (auto& c : meq.c) {
        if (c.is_zero()) continue;
        content = content.is_zero() ? c : gcd(content, c);
        if (!content.is_zero() && content.degree() == 0) break;
    }
    if (!content.is_zero() && content.degree() > 0)
        for (auto& c : meq.c)
            if (!c.is_zero()) c = exact_div_or_die(c, content);
    if (meq.c[K].is_zero()) throw std::logic_error("leading Mahler coefficient vanished");
    u64 scale_by = F.inv(meq.c[K].lc());
    if (scale_by != 1)
        for (auto& c : meq.c)
            if (!c.is_zero()) c = scale(c, scale_by);

    if (meq.c[0].is_zero()) throw std::logic_error("c_0 vanished; contradicts minimality theory");
    meq.v0 = meq.c[0].valuation();
    meq.d0 = std::size_t(meq.c[0].degree());
    return meq;
}

std::vector<UniPoly> monicize(const MahlerEquation& meq, const PrimeField& F) {
    const UniPoly& c0 = meq.c[0];
    const UniPoly c0sq = upoly_mul(c0, c0);
    const std::size_t d0 = meq.d0;
    std::vector<UniPoly> a;
    a.reserve(meq.K);
    u64 pk = 1;
    for (std::size_t k = 1; k <= meq.K; ++k) {
        pk = mul_checked(pk, F.p);
        if (meq.c[k].is_zero()) {
            a.push_back(UniPoly::zero(F));
            continue;
        }
        if (mul_checked(d0, pk) + std::size_t(meq.c[k].degree()) > MAX_MONIC_DEGREE)
            throw InvalidInput("monic coefficients too large for the mahler method");
        // a_k = -c_k c_0^{p^k - 2}, computed as c_k c_0(x^{p^k}) / c_0^2
        // (c_0(x^{p^k}) = c_0^{p^k} by Frobenius, so the division is exact)
        UniPoly num = upoly_mul(meq.c[k], substitute_power(c0, pk));
        a.push_back(neg(exact_div_or_die(num, c0sq)));
    }
    return a;
}

std::pair<LaurentUniPoly, u64> negative_part_and_h0(const BiPoly& E, const MahlerEquation& meq) {
    const PrimeField& F = E.F;
    const std::size_t v0 = meq.v0;
    UniPoly chat = meq.c[0];
    chat.c.erase(chat.c.begin(), chat.c.begin() + v0);
    UniPoly f = expand_newton(E, v0 + 1).prefix;
    UniPoly u = mul_trunc(f, upoly_series_inv(chat, v0 + 1), v0 + 1);
    LaurentUniPoly gm(F);
    if (v0 > 0) {
        UniPoly low(F);
        low.c.assign(u.c.begin(), u.c.begin() + std::min(u.c.size(), v0));
        low.trim();
        gm = LaurentUniPoly(-int(v0), std::move(low));
    }
    return {gm, u.coeff(v0)};
}

UniPoly compute_rhs(const std::vector<UniPoly>& a, const LaurentUniPoly& g_minus) {
    const PrimeField& F = g_minus.u.F;
    if (g_minus.is_zero()) return UniPoly::zero(F);
    LaurentUniPoly t(g_minus.val, neg(g_minus.u));
    u64 pk = 1;
    for (const auto& ak : a) {
        pk = mul_checked(pk, F.p);
        if (ak.is_zero()) continue;
        t = laurent_add(t, laurent_mul_poly(laurent_substitute_power(g_minus, pk), ak));
    }
    auto [negpart, nonneg] = laurent_split(t);
    if (!negpart.is_zero())
        throw std::logic_error("negative exponents failed to cancel in the right-hand side");
    return nonneg;
}

SectionState section_step(const SectionState& s, const MonicMahlerData& data, u64 r) {
    const PrimeField& F = s.a.F;
    if (r >= F.p) throw BadDigit();
    const std::size_t K = data.a.size();
    SectionState out{UniPoly(F), std::vector<UniPoly>(K + 1, UniPoly(F))};
    out.a = section_uni(add(s.a, upoly_mul(s.b[0], data.rhs)), r);
    for (std::size_t k = 0; k < K; ++k)
        out.b[k] = section_uni(add(upoly_mul(s.b[0], data.a[k]), s.b[k + 1]), r);
    return out;
}

u64 evaluate_state(const SectionState& s, u64 h0, const PrimeField& F) {
    u64 bsum = 0;
    for (const auto& bk : s.b) bsum = F.add(bsum, bk.coeff(0));
    return F.add(s.a.coeff(0), F.mul(bsum, h0));
}

MahlerPipeline mahler_precompute(const BiPoly& E) {
    MahlerPipeline mp{E.F, E, {}, {{}, UniPoly(E.F), 0, 0}};
    mp.meq = algeq_to_mahler(E);
    mp.monic.a = monicize(mp.meq, E.F);
    auto [gm, h0] = negative_part_and_h0(E, mp.meq);
    mp.monic.h0 = h0;
    mp.monic.rhs = compute_rhs(mp.monic.a, gm);
    std::size_t D = mp.monic.rhs.is_zero() ? 0 : std::size_t(mp.monic.rhs.degree());
    for (const auto& ak : mp.monic.a)
        if (!ak.is_zero()) D = std::max(D, std::size_t(ak.degree()));
    mp.monic.D = D;
    return mp;
}

u64 mahler_coeff(const MahlerPipeline& mp, const BigIndex& N, MahlerQueryStats* stats) {
    const PrimeField& F = mp.F;
    if (N.cmp_u64(mp.meq.d0) <= 0) {
        std::size_t n = N.to_u64();
        return expand_newton(mp.E, n + 1).prefix.coeff(n);
    }
    const std::size_t K = mp.meq.K;
    const UniPoly& c0 = mp.meq.c[0];
    u64 acc = 0;
    for (std::size_t j = mp.meq.v0; j <= mp.meq.d0; ++j) {
        u64 cj = c0.coeff(j);
        if (!cj) continue;
        BigIndex Np = N;
        Np.sub_small(j);
        std::vector<u64> digits = Np.digits(F.p);
        SectionState st{UniPoly(F), std::vector<UniPoly>(K + 1, UniPoly(F))};
        st.b[0] = UniPoly::one(F);
        for (u64 r : digits) {
            st = section_step(st, mp.monic, r);
            if (stats) ++stats->section_calls;
        }
        if (stats) ++stats->h_queries;
        acc = F.add(acc, F.mul(cj, evaluate_state(st, mp.monic.h0, F)));
    }
    return acc;
}

u64 coeff_via_mahler(const BiPoly& E, const BigIndex& N) {
    return mahler_coeff(mahler_precompute(E), N);
}

namespace {

// h_n by memoized divide-and-conquer straight off the monic recurrence,
// independent of the section machine.  n = 0 is the recursion floor: the
// recurrence there degenerates to a fixed point whose solution is h(0).
u64 dac_value(const MahlerPipeline& mp, const BigIndex& n, std::map<BigIndex, u64>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    const PrimeField& F = mp.F;
    if (n.is_zero()) return memo[n] = mp.monic.h0;
    u64 val = n.fits_u64() ? mp.monic.rhs.coeff(n.to_u64()) : 0;
    u64 pk = 1;
    for (std::size_t k = 1; k <= mp.meq.K; ++k) {
        pk *= F.p;
        const UniPoly& ak = mp.monic.a[k - 1];
        for (std::size_t j = 0; j < ak.c.size(); ++j) {
            if (!ak.c[j]) continue;
            if (n.cmp_u64(j) < 0) break;
            BigIndex child = n;
            child.sub_small(j);
            if (child.mod_small(pk) != 0) continue;
            child.divmod_small(pk);
            val = F.add(val, F.mul(ak.c[j], dac_value(mp, child, memo)));
        }
    }
    return memo[n] = val;
}

}  // namespace

std::vector<BigIndex> mahler_touched_indices(const MahlerPipeline& mp, const BigIndex& N,
                                             u64* out_value) {
    const PrimeField& F = mp.F;
    std::map<BigIndex, u64> memo;
    u64 acc = 0;
    for (std::size_t j = mp.meq.v0; j <= mp.meq.d0; ++j) {
        u64 cj = mp.meq.c[0].coeff(j);
        if (!cj) continue;
        BigIndex Np = N;
        Np.sub_small(j);
        acc = F.add(acc, F.mul(cj, dac_value(mp, Np, memo)));
    }
    if (out_value) *out_value = acc;
    std::vector<BigIndex> keys;
    keys.reserve(memo.size() + 1);
    for (const auto& kv : memo) keys.push_back(kv.first);
    BigIndex zero;
    if (memo.find(zero) == memo.end()) keys.insert(keys.begin(), zero);
    return keys;
}

double mahler_predicted_ops(const MahlerPipeline& mp, std::size_t ndigits10) {
    double window = 0;
    for (std::size_t j = mp.meq.v0; j <= mp.meq.d0; ++j)
        if (mp.meq.c[0].coeff(j)) window += 1;
    double digits = ndigits10 * 3.33 / std::max(1.0, std::log2(double(mp.F.p))) + 1;
    return window * digits * double(mp.meq.K + 1) * double(std::max<std::size_t>(mp.monic.D, 1));
}

}  // namespace nth

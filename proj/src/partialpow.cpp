#include "nthcoeff/partialpow.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/kernels.hpp"

namespace nth {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

// The sequence c_{delta_minus + n} has generating function 1/P(t) with
// P(t) = t^delta_minus b(x/t,t).  All arithmetic stays in Fp[x]: a value is a
// numerator paired with the exponent of the denominator lc^e, where lc = P_0
// is the lowest diagonal of b.
struct RecurrenceEngine {
    PrimeField F;
    std::size_t d;            // order of the recurrence, deg_t P
    std::vector<UniPoly> P;   // P[k] = b_{k - delta_minus}
    std::vector<UniPoly> Ps;  // reciprocal of P: Ps[m] = P[d-m]
    UniPoly lc;               // Ps[d] = P[0], nonzero
    std::vector<UniPoly> st;  // cleared initial segment: c_{dm+n} = st[n]/lc^{n+1}
    std::vector<UniPoly> Qt;  // Qt[m] = st[2d-2-m] lc^m

    explicit RecurrenceEngine(const TLaurentPoly& tl)
        : F(tl.F), d(tl.coeffs.size() - 1), P(tl.coeffs), lc(tl.coeffs.front()) {
        Ps.assign(P.rbegin(), P.rend());
        if (d == 0) return;
        std::vector<UniPoly> lcpow{UniPoly::one(F)};
        for (std::size_t k = 1; k <= 2 * d - 2; ++k) lcpow.push_back(upoly_mul(lcpow.back(), lc));
        st.push_back(UniPoly::one(F));
        for (std::size_t n = 1; n <= 2 * d - 2; ++n) {
            UniPoly acc(F);
            for (std::size_t k = 1; k <= std::min(n, d); ++k)
                acc = add(acc, upoly_mul(upoly_mul(P[k], st[n - k]), lcpow[k - 1]));
            st.push_back(neg(acc));
        }
        for (std::size_t m = 0; m <= 2 * d - 2; ++m) Qt.push_back(upoly_mul(st[2 * d - 2 - m], lcpow[m]));
    }

    // bring r to t-degree < d; every elimination of a top term scales the
    // represented class by lc, so e goes up with it
    void reduce(std::vector<UniPoly>& r, u64& e) const {
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        while (r.size() > d) {
            UniPoly top = std::move(r.back());
            r.pop_back();
            if (top.is_zero()) continue;
            const std::size_t k = r.size();  // top sat at t^k, k >= d
            for (auto& q : r) q = upoly_mul(q, lc);
            for (std::size_t m = 0; m < d; ++m)
                r[k - d + m] = sub(r[k - d + m], upoly_mul(top, Ps[m]));
            ++e;
            while (!r.empty() && r.back().is_zero()) r.pop_back();
        }
    }

    void mul(std::vector<UniPoly>& a, u64& ea, const std::vector<UniPoly>& b, u64 eb) const {
        if (a.empty() || b.empty()) {
            a.clear();
            ea = 0;
            return;
        }
        std::vector<UniPoly> c(a.size() + b.size() - 1, UniPoly(F));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!b[j].is_zero()) c[i + j] = add(c[i + j], upoly_mul(a[i], b[j]));
        }
        a = std::move(c);
        ea += eb;
        reduce(a, ea);
    }

    // multiply by t
    void step(std::vector<UniPoly>& r, u64& e) const {
        r.insert(r.begin(), UniPoly(F));
        reduce(r, e);
    }

    FractionFreePower power(u64 n) const {
        FractionFreePower out;
        if (d == 0) return out;  // P* is a unit in t, every remainder is zero
        out.r = {UniPoly::one(F)};
        std::vector<UniPoly> base{UniPoly(F), UniPoly::one(F)};
        u64 be = 0;
        reduce(base, be);
        while (n) {
            if (n & 1) mul(out.r, out.denom_exp, base, be);
            n >>= 1;
            if (n) {
                const std::vector<UniPoly> sq = base;
                const u64 se = be;
                mul(base, be, sq, se);
            }
        }
        return out;
    }

    // c_{delta_minus + n} as (numerator, denominator exponent)
    std::pair<UniPoly, u64> value_of(const std::vector<UniPoly>& r, u64 e) const {
        UniPoly num(F);
        for (std::size_t m = 0; m < r.size() && m < d; ++m)
            num = add(num, upoly_mul(r[m], Qt[2 * d - 2 - m]));
        return {num, e + 2 * d - 1};
    }

    std::pair<UniPoly, u64> value_at(u64 n) const {
        if (d == 0) return {n == 0 ? UniPoly::one(F) : UniPoly(F), n == 0 ? 1 : 0};
        if (n < st.size()) return {st[n], n + 1};
        auto pw = power(n);
        return value_of(pw.r, pw.denom_exp);
    }
};

}  // namespace

TLaurentPoly t_laurent(const BiPoly& b) {
    if (b.is_zero()) throw InvalidInput("diagonal expansion of the zero polynomial");
    int lo = 0, hi = 0;
    bool first = true;
    for (std::size_t j = 0; j < b.ny; ++j)
        for (std::size_t i = 0; i < b.nx; ++i) {
            if (!b.at(i, j)) continue;
            const int v = int(j) - int(i);
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
    TLaurentPoly tl{b.F, -lo, hi, {}};
    for (int v = lo; v <= hi; ++v) {
        UniPoly q(b.F);
        q.c.assign(b.nx, 0);
        for (std::size_t i = 0; i < b.nx; ++i) {
            const long long j = (long long)i + v;
            if (j >= 0 && j < (long long)b.ny) q.c[i] = b.at(i, std::size_t(j));
        }
        q.trim();
        tl.coeffs.push_back(std::move(q));
    }
    return tl;
}

std::vector<long long> useful_deltas(std::size_t dx, std::size_t dy, int delta_minus,
                                     int delta_plus, u64 p) {
    if (delta_minus < 0 || delta_plus < 0) throw InvalidInput("negative diagonal bounds");
    if (p < 2 || p > (u64(1) << 48)) throw InvalidInput("radix out of range for the sparse route");
    const long long P = (long long)p;
    const long long lo = (1 - P) * delta_minus, hi = (P - 1) * delta_plus;
    std::set<long long> out;
    const long long kmin = floor_div(lo - (long long)dx, P);
    const long long kmax = floor_div(hi + (long long)dy, P);
    for (long long k = kmin; k <= kmax; ++k)
        for (long long dlt = k * P - (long long)dy; dlt <= k * P + (long long)dx; ++dlt)
            if (dlt >= lo && dlt <= hi) out.insert(dlt);
    return std::vector<long long>(out.begin(), out.end());
}

FractionFreePower tpower_mod_reciprocal(const TLaurentPoly& tl, u64 n) {
    return RecurrenceEngine(tl).power(n);
}

RationalFunction c_coefficient(const TLaurentPoly& tl, long long u) {
    if (u < tl.delta_minus) throw IndexTooLow();
    RecurrenceEngine eng(tl);
    auto [num, e] = eng.value_at(u64(u - tl.delta_minus));
    return RationalFunction(std::move(num), pow_u(eng.lc, e));
}

namespace {

// pi_delta = sum over v of c_{delta - p v}(x) b_v(x^p); values arrive as
// numerator/lc^e pairs, so the sum is cleared to the largest exponent and the
// division at the end certifies that the result is a polynomial.
UniPoly assemble_diagonal(const PrimeField& F, const TLaurentPoly& tl,
                          const std::vector<std::pair<UniPoly, u64>>& vals,
                          const std::vector<int>& vs, const UniPoly& lc) {
    u64 emax = 0;
    for (const auto& ve : vals) emax = std::max(emax, ve.second);
    UniPoly total(F);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        UniPoly term = upoly_mul(vals[k].first, substitute_power(tl.at_v(vs[k]), F.p));
        if (vals[k].second < emax) term = upoly_mul(term, pow_u(lc, emax - vals[k].second));
        total = add(total, term);
    }
    if (total.is_zero()) return total;
    auto q = try_exact_div(total, pow_u(lc, emax));
    if (!q) throw NonPolynomialResult();
    return *q;
}

}  // namespace

UniPoly partial_power(const BiPoly& b, long long delta) {
    const PrimeField& F = b.F;
    TLaurentPoly tl = t_laurent(b);
    RecurrenceEngine eng(tl);
    const long long P = (long long)F.p;
    std::vector<std::pair<UniPoly, u64>> vals;
    std::vector<int> vs;
    for (int v = -tl.delta_minus; v <= tl.delta_plus; ++v) {
        const long long u = delta - P * v;
        if (u < tl.delta_minus) continue;
        vals.push_back(eng.value_at(u64(u - tl.delta_minus)));
        vs.push_back(v);
    }
    if (vals.empty()) return UniPoly(F);
    return assemble_diagonal(F, tl, vals, vs, eng.lc);
}

u64 SparseDiagonalTable::coeff(long long alpha, long long beta) const {
    if (alpha < 0 || beta < 0) return 0;
    auto it = pi.find(beta - alpha);
    if (it == pi.end()) return 0;
    return it->second.coeff(std::size_t(alpha));
}

SparseDiagonalTable sparse_power(const BiPoly& b) {
    const PrimeField& F = b.F;
    const u64 p = F.p;
    TLaurentPoly tl = t_laurent(b);
    RecurrenceEngine eng(tl);
    // cover every offset a digit matrix can read when b is the denominator of
    // a diagonal form: x-bound deg_x b, y-bound deg_y b + 1 (the paired
    // numerator can exceed b's y-degree by one)
    const std::size_t dx = std::size_t(b.degx());
    const std::size_t dy = std::size_t(b.degy()) + 1;
    auto deltas = useful_deltas(dx, dy, tl.delta_minus, tl.delta_plus, p);

    const long long P = (long long)p;
    std::set<u64> need;
    for (long long dlt : deltas)
        for (int v = -tl.delta_minus; v <= tl.delta_plus; ++v) {
            const long long u = dlt - P * v;
            if (u >= tl.delta_minus) need.insert(u64(u - tl.delta_minus));
        }

    // walk the needed recurrence indices in order; nearby indices are reached
    // by single t-steps from the previous one instead of a fresh powering
    std::map<u64, std::pair<UniPoly, u64>> values;
    std::vector<UniPoly> cur;
    u64 ce = 0, cn = 0;
    bool have = false;
    u64 lg = 0;
    for (u64 q = p; q; q >>= 1) ++lg;
    const u64 step_limit = 8 * lg + 64;
    for (u64 n : need) {
        if (eng.d == 0 || n < eng.st.size()) {
            values.emplace(n, eng.value_at(n));
            continue;
        }
        if (!have || n - cn > step_limit) {
            auto pw = eng.power(n);
            cur = std::move(pw.r);
            ce = pw.denom_exp;
            cn = n;
            have = true;
        } else {
            while (cn < n) {
                eng.step(cur, ce);
                ++cn;
            }
        }
        values.emplace(n, eng.value_of(cur, ce));
    }

    SparseDiagonalTable T{F, tl.delta_minus, tl.delta_plus, {}};
    for (long long dlt : deltas) {
        std::vector<std::pair<UniPoly, u64>> vals;
        std::vector<int> vs;
        for (int v = -tl.delta_minus; v <= tl.delta_plus; ++v) {
            const long long u = dlt - P * v;
            if (u < tl.delta_minus) continue;
            vals.push_back(values.at(u64(u - tl.delta_minus)));
            vs.push_back(v);
        }
        T.pi.emplace(dlt, vals.empty() ? UniPoly(F) : assemble_diagonal(F, tl, vals, vs, eng.lc));
    }
    return T;
}

std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const SparseDiagonalTable& T, u64 r) {
    if (r >= F.p) throw BadDigit();
    const std::size_t w = dy + 1;
    const std::size_t m = (dx + 1) * w;
    std::vector<u64> A(m * m, 0);
    for (std::size_t ip = 0; ip <= dx; ++ip)
        for (std::size_t jp = 0; jp <= dy; ++jp) {
            const std::size_t row = ip * w + jp;
            const long long abase = (long long)(F.p * ip + r);
            const long long bbase = (long long)(F.p * jp + r);
            for (std::size_t i = 0; i <= dx; ++i)
                for (std::size_t j = 0; j <= dy; ++j)
                    A[row * m + i * w + j] = T.coeff(abase - (long long)i, bbase - (long long)j);
        }
    kernels::add_work(u64(m) * u64(m));
    return A;
}

FastLinearRep::FastLinearRep(const DiagonalRep& rep, SparseDiagonalTable t)
    : F(rep.F),
      dx(rep.dx),
      dy(rep.dy),
      m((rep.dx + 1) * (rep.dy + 1)),
      L(m, 0),
      C(m, 0),
      table(std::move(t)),
      cache_(std::make_shared<Cache>()) {
    L[0] = 1;
    const u64 ib = F.inv(rep.b00);
    for (std::size_t i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j <= dy; ++j) C[i * (dy + 1) + j] = F.mul(rep.a.at(i, j), ib);
}

const std::vector<u64>& FastLinearRep::matrix(u64 r) const {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->by_digit.find(r);
    if (it == cache_->by_digit.end())
        it = cache_->by_digit.emplace(r, matrix_for_digit(F, dx, dy, table, r)).first;
    return it->second;
}

u64 linrep_coeff(const FastLinearRep& lr, const BigIndex& N) {
    return detail::fold_digit_matrices(lr, N);
}

FastLinearRep diagonal_fast_precompute(const BiPoly& E) {
    DiagonalRep rep = furstenberg(E);
    if (rep.dx > std::size_t(rep.b.degx()) || rep.dy > std::size_t(rep.b.degy()) + 1)
        throw std::logic_error("sparse table bounds do not cover the representation");
    SparseDiagonalTable T = sparse_power(rep.b);
    return FastLinearRep(rep, std::move(T));
}

u64 coeff_via_diagonal_fast(const BiPoly& E, const BigIndex& N) {
    return linrep_coeff(diagonal_fast_precompute(E), N);
}

}  // namespace nth

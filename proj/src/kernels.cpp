#include "nthcoeff/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nth::kernels {

namespace {

std::atomic<u64> g_work{0};
std::atomic<bool> g_parallel{true};

constexpr std::size_t SCHOOLBOOK_CUTOFF = 48;   // min(na,nb) below this: schoolbook wins
constexpr std::size_t NTT_MIN_OUT = 192;        // below this Karatsuba/schoolbook is cheaper
constexpr std::size_t PAR_GRAIN = std::size_t(1) << 18;

struct NttPrime {
    u64 mod, g, bar;
};

// 2-adic valuations 25, 26, 24; product ~5.9e25
constexpr u64 NTT_MODS[3] = {167772161, 469762049, 754974721};
constexpr u64 NTT_GENS[3] = {3, 3, 11};
constexpr int NTT_MAX_LG = 24;

u64 bar_of(u64 m) { return u64((u128(1) << 64) / m); }

// x < 2^62
inline u64 bred(u64 x, u64 mod, u64 bar) {
    u64 q = u64((u128(x) * bar) >> 64);
    u64 r = x - q * mod;
    while (r >= mod) r -= mod;
    return r;
}

inline u64 nmul(u64 a, u64 b, u64 mod, u64 bar) { return bred(a * b, mod, bar); }

u64 npow(u64 a, u64 e, u64 mod, u64 bar) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = nmul(r, a, mod, bar);
        a = nmul(a, a, mod, bar);
        e >>= 1;
    }
    return r;
}

// roots[k] = primitive 2^k-th root, per prime
struct NttTables {
    u64 root[NTT_MAX_LG + 1];
    u64 iroot[NTT_MAX_LG + 1];
    u64 bar;
};

const NttTables& tables(int pi) {
    static NttTables t[3];
    static bool init = [] {
        for (int i = 0; i < 3; ++i) {
            u64 mod = NTT_MODS[i], bar = bar_of(mod);
            t[i].bar = bar;
            u64 r = npow(NTT_GENS[i], (mod - 1) >> NTT_MAX_LG, mod, bar);
            u64 ir = npow(r, mod - 2, mod, bar);
            t[i].root[NTT_MAX_LG] = r;
            t[i].iroot[NTT_MAX_LG] = ir;
            for (int k = NTT_MAX_LG; k > 0; --k) {
                t[i].root[k - 1] = nmul(t[i].root[k], t[i].root[k], mod, bar);
                t[i].iroot[k - 1] = nmul(t[i].iroot[k], t[i].iroot[k], mod, bar);
            }
        }
        return true;
    }();
    (void)init;
    return t[pi];
}

void bit_reverse(u64* a, std::size_t n) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

void ntt(u64* a, std::size_t n, int pi, bool invert) {
    const NttTables& tb = tables(pi);
    const u64 mod = NTT_MODS[pi], bar = tb.bar;
    bit_reverse(a, n);
    int lg = 0;
    while ((std::size_t(1) << lg) < n) ++lg;
    for (int k = 1; k <= lg; ++k) {
        std::size_t len = std::size_t(1) << k;
        u64 wlen = invert ? tb.iroot[k] : tb.root[k];
        std::size_t half = len >> 1;
        bool par = parallel() && n >= (std::size_t(1) << 17) && n / len >= 4;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::ptrdiff_t blk = 0; blk < std::ptrdiff_t(n / len); ++blk) {
            std::size_t i = std::size_t(blk) * len;
            u64 w = 1;
            for (std::size_t j = 0; j < half; ++j) {
                u64 u = a[i + j], v = nmul(a[i + j + half], w, mod, bar);
                u64 s = u + v;
                if (s >= mod) s -= mod;
                a[i + j] = s;
                a[i + j + half] = u >= v ? u - v : u + mod - v;
                w = nmul(w, wlen, mod, bar);
            }
        }
        (void)par;
    }
    if (invert) {
        u64 ninv = npow(n % mod, mod - 2, mod, bar);
        bool par = parallel() && n >= (std::size_t(1) << 17);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i)
            a[i] = nmul(a[i], ninv, mod, bar);
        (void)par;
    }
}

}  // namespace

u64 work() { return g_work.load(std::memory_order_relaxed); }
void reset_work() { g_work.store(0, std::memory_order_relaxed); }
void add_work(u64 n) { g_work.fetch_add(n, std::memory_order_relaxed); }

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }
bool parallel() { return g_parallel.load(std::memory_order_relaxed); }

void mul_schoolbook_serial(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                           std::size_t nb, u64* c) {
    add_work(u64(na) * nb);
    std::size_t nc = na + nb - 1;
    if (F.small()) {
        for (std::size_t k = 0; k < nc; ++k) {
            std::size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
            std::size_t hi = std::min(k, na - 1);
            u128 acc = 0;
            for (std::size_t i = lo; i <= hi; ++i) acc += u64(a[i]) * b[k - i];
            c[k] = F.reduce128(acc);
        }
    } else {
        for (std::size_t k = 0; k < nc; ++k) {
            std::size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
            std::size_t hi = std::min(k, na - 1);
            u64 acc = 0;
            for (std::size_t i = lo; i <= hi; ++i)
                acc = F.add(acc, F.reduce128(u128(a[i]) * b[k - i]));
            c[k] = acc;
        }
    }
}

void mul_schoolbook(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                    std::size_t nb, u64* c) {
    if (!parallel() || u64(na) * nb < PAR_GRAIN || !F.small()) {
        mul_schoolbook_serial(F, a, na, b, nb, c);
        return;
    }
    add_work(u64(na) * nb);
    std::size_t nc = na + nb - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(nc); ++k) {
        std::size_t lo = std::size_t(k) >= nb - 1 ? std::size_t(k) - (nb - 1) : 0;
        std::size_t hi = std::min(std::size_t(k), na - 1);
        u128 acc = 0;
        for (std::size_t i = lo; i <= hi; ++i) acc += u64(a[i]) * b[std::size_t(k) - i];
        c[k] = F.reduce128(acc);
    }
}

void mul_karatsuba(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                   std::size_t nb, u64* c) {
    if (std::min(na, nb) <= SCHOOLBOOK_CUTOFF) {
        mul_schoolbook(F, a, na, b, nb, c);
        return;
    }
    std::size_t m = (std::max(na, nb) + 1) / 2;
    // a = a0 + x^m a1, b = b0 + x^m b1 (a1 or b1 may be empty)
    std::size_t na0 = std::min(na, m), nb0 = std::min(nb, m);
    std::size_t na1 = na - na0, nb1 = nb - nb0;
    std::size_t nc = na + nb - 1;
    std::fill(c, c + nc, 0);

    std::vector<u64> z0(na0 + nb0 - 1);
    mul_karatsuba(F, a, na0, b, nb0, z0.data());
    for (std::size_t i = 0; i < z0.size(); ++i) c[i] = z0[i];

    if (na1 && nb1) {
        std::vector<u64> z2(na1 + nb1 - 1);
        mul_karatsuba(F, a + na0, na1, b + nb0, nb1, z2.data());
        for (std::size_t i = 0; i < z2.size(); ++i) c[2 * m + i] = F.add(c[2 * m + i], z2[i]);

        std::size_t nsa = std::max(na0, na1), nsb = std::max(nb0, nb1);
        std::vector<u64> sa(nsa), sb(nsb);
        for (std::size_t i = 0; i < nsa; ++i)
            sa[i] = F.add(i < na0 ? a[i] : 0, i < na1 ? a[na0 + i] : 0);
        for (std::size_t i = 0; i < nsb; ++i)
            sb[i] = F.add(i < nb0 ? b[i] : 0, i < nb1 ? b[nb0 + i] : 0);
        std::vector<u64> z1(nsa + nsb - 1);
        mul_karatsuba(F, sa.data(), nsa, sb.data(), nsb, z1.data());
        for (std::size_t i = 0; i < z1.size(); ++i) {
            u64 t = z1[i];
            if (i < z0.size()) t = F.sub(t, z0[i]);
            if (i < z2.size()) t = F.sub(t, z2[i]);
            c[m + i] = F.add(c[m + i], t);
        }
    } else if (na1) {
        std::vector<u64> z1(na1 + nb0 - 1);
        mul_karatsuba(F, a + na0, na1, b, nb0, z1.data());
        for (std::size_t i = 0; i < z1.size(); ++i) c[m + i] = F.add(c[m + i], z1[i]);
    } else if (nb1) {
        std::vector<u64> z1(na0 + nb1 - 1);
        mul_karatsuba(F, a, na0, b + nb0, nb1, z1.data());
        for (std::size_t i = 0; i < z1.size(); ++i) c[m + i] = F.add(c[m + i], z1[i]);
    }
}

bool ntt_ok(const PrimeField& F, std::size_t na, std::size_t nb) {
    std::size_t nc = na + nb - 1;
    if (nc > (std::size_t(1) << NTT_MAX_LG)) return false;
    u128 pm1 = F.p - 1;
    if (pm1 == 0) return true;
    u128 sq = pm1 * pm1;  // p < 2^61: fits u128
    u128 prod = u128(NTT_MODS[0]) * NTT_MODS[1] * NTT_MODS[2];
    if (sq >= prod) return false;
    u128 terms = std::min(na, nb);
    if (terms > prod / sq) return false;
    return true;
}

void mul_ntt(const PrimeField& F, const u64* a, std::size_t na, const u64* b, std::size_t nb,
             u64* c) {
    std::size_t nc = na + nb - 1;
    std::size_t n = 1;
    int lg = 0;
    while (n < nc) n <<= 1, ++lg;
    add_work(9ull * n * lg + n);

    bool square = (a == b && na == nb);
    std::vector<u64> fa[3], fb[3];
    for (int pi = 0; pi < 3; ++pi) {
        const u64 mod = NTT_MODS[pi];
        const u64 bar = tables(pi).bar;
        fa[pi].assign(n, 0);
        for (std::size_t i = 0; i < na; ++i) fa[pi][i] = a[i] % mod;
        ntt(fa[pi].data(), n, pi, false);
        if (!square) {
            fb[pi].assign(n, 0);
            for (std::size_t i = 0; i < nb; ++i) fb[pi][i] = b[i] % mod;
            ntt(fb[pi].data(), n, pi, false);
        }
        const u64* other = square ? fa[pi].data() : fb[pi].data();
        u64* self = fa[pi].data();
        bool par = parallel() && n >= (std::size_t(1) << 17);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i)
            self[i] = nmul(self[i], other[i], mod, bar);
        (void)par;
        ntt(fa[pi].data(), n, pi, true);
        fb[pi].clear();
        fb[pi].shrink_to_fit();
    }

    // Garner recombination
    const u64 m0 = NTT_MODS[0], m1 = NTT_MODS[1], m2 = NTT_MODS[2];
    const u64 b1 = tables(1).bar, b2 = tables(2).bar;
    const u64 inv01 = npow(m0 % m1, m1 - 2, m1, b1);
    const u64 m0m1_mod2 = nmul(m0 % m2, m1 % m2, m2, b2);
    const u64 inv012 = npow(m0m1_mod2, m2 - 2, m2, b2);
    const u128 m0m1 = u128(m0) * m1;
    const u64* r0 = fa[0].data();
    const u64* r1 = fa[1].data();
    const u64* r2 = fa[2].data();
    bool par = parallel() && nc >= (std::size_t(1) << 17);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(nc); ++i) {
        u64 x0 = r0[i];
        u64 t1 = nmul(r1[i] + m1 - x0 % m1, inv01, m1, b1);
        u64 x01_mod2 = u64((x0 + u128(t1) * m0) % m2);
        u64 t2 = nmul(r2[i] + m2 - x01_mod2, inv012, m2, b2);
        u128 val = u128(x0) + u128(t1) * m0 + u128(t2) * m0m1;  // < m0*m1*m2 ~ 2^86
        c[i] = F.reduce128(val);
    }
    (void)par;
}

void mul(const PrimeField& F, const u64* a, std::size_t na, const u64* b, std::size_t nb,
         u64* c) {
    if (std::min(na, nb) <= SCHOOLBOOK_CUTOFF) {
        mul_schoolbook(F, a, na, b, nb, c);
        return;
    }
    if (na + nb - 1 >= NTT_MIN_OUT && ntt_ok(F, na, nb)) {
        mul_ntt(F, a, na, b, nb, c);
        return;
    }
    mul_karatsuba(F, a, na, b, nb, c);
}

std::vector<u64> mul_vec(const PrimeField& F, const std::vector<u64>& a,
                         const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> c(a.size() + b.size() - 1);
    mul(F, a.data(), a.size(), b.data(), b.size(), c.data());
    return c;
}

}  // namespace nth::kernels

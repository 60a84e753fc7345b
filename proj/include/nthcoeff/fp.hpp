#pragma once

#include <cstdint>

#include "nthcoeff/errors.hpp"

namespace nth {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);

// Arithmetic context for F_p, 2 <= p < 2^61.  Residues travel as raw u64,
// always in [0, p); every operation goes through a context.
struct PrimeField {
    u64 p;
    u64 bar;  // floor(2^64 / p), used for Barrett reduction when small()

    PrimeField() : PrimeField(2) {}

    explicit PrimeField(u64 p_) {
        if (p_ < 2 || p_ >= (u64(1) << 61) || !is_prime(p_))
            throw InvalidInput("modulus must be a prime in [2, 2^61)");
        p = p_;
        bar = u64((u128(1) << 64) / p);
    }

    bool small() const { return p < (u64(1) << 31); }
    bool operator==(const PrimeField& o) const { return p == o.p; }
    bool operator!=(const PrimeField& o) const { return p != o.p; }

    u64 norm(u64 v) const { return v < p ? v : v % p; }

    u64 norm_int(long long v) const {
        long long r = v % (long long)p;
        if (r < 0) r += (long long)p;
        return u64(r);
    }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }

    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }

    u64 neg(u64 a) const { return a ? p - a : 0; }

    // x < 2^62 assumed
    u64 reduce62(u64 x) const {
        u64 q = u64((u128(x) * bar) >> 64);
        u64 r = x - q * p;
        while (r >= p) r -= p;
        return r;
    }

    u64 mul(u64 a, u64 b) const {
        if (small()) return reduce62(a * b);
        return u64(u128(a) * b % p);
    }

    u64 reduce128(u128 x) const { return u64(x % p); }

    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % p, base = norm(a);
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const {
        a = norm(a);
        if (a == 0) throw ZeroInverse();
        return pow(a, p - 2);
    }
};

inline u64 fp_inv(const PrimeField& F, u64 a) { return F.inv(a); }

}  // namespace nth

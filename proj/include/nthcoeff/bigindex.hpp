#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/fp.hpp"

namespace nth {

// Arbitrary-size nonnegative index N.  Little-endian 64-bit limbs, no
// trailing zero limbs (empty vector == 0).  Only the handful of operations
// the coefficient pipelines need: compare, add/sub/mul/divmod by machine
// words, and base-p digit extraction.
struct BigIndex {
    std::vector<u64> limb;

    BigIndex() = default;
    explicit BigIndex(u64 v) {
        if (v) limb.push_back(v);
    }

    void trim() {
        while (!limb.empty() && limb.back() == 0) limb.pop_back();
    }
    bool is_zero() const { return limb.empty(); }
    bool fits_u64() const { return limb.size() <= 1; }
    u64 to_u64() const { return limb.empty() ? 0 : limb[0]; }

    bool operator==(const BigIndex& o) const { return limb == o.limb; }
    bool operator!=(const BigIndex& o) const { return limb != o.limb; }

    // -1, 0, +1
    int cmp(const BigIndex& o) const;
    int cmp_u64(u64 v) const;
    bool operator<(const BigIndex& o) const { return cmp(o) < 0; }

    void add_small(u64 v);
    // throws IndexTooLow if v > *this
    void sub_small(u64 v);
    void mul_small(u64 v);
    // returns remainder, quotient in place; d >= 1
    u64 divmod_small(u64 d);

    u64 mod_small(u64 d) const;

    std::string to_string() const;
    std::size_t ndigits10() const;

    // base-p digits, least significant first; zero -> {0}
    std::vector<u64> digits(u64 p) const;
};

// base-p digits, most significant first; zero -> {0}
std::vector<u64> radix_digits(const BigIndex& n, u64 p);

// Accepts plain decimal, "10^k", or "a*10^k" (a decimal, k decimal).
BigIndex parse_index(std::string_view s);

}  // namespace nth

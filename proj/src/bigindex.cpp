#include "nthcoeff/bigindex.hpp"

#include <algorithm>

namespace nth {

int BigIndex::cmp(const BigIndex& o) const {
    if (limb.size() != o.limb.size()) return limb.size() < o.limb.size() ? -1 : 1;
    for (std::size_t i = limb.size(); i-- > 0;)
        if (limb[i] != o.limb[i]) return limb[i] < o.limb[i] ? -1 : 1;
    return 0;
}

int BigIndex::cmp_u64(u64 v) const {
    if (limb.size() > 1) return 1;
    u64 me = to_u64();
    if (me != v) return me < v ? -1 : 1;
    return 0;
}

void BigIndex::add_small(u64 v) {
    u64 carry = v;
    for (std::size_t i = 0; carry && i < limb.size(); ++i) {
        u64 s = limb[i] + carry;
        carry = s < carry ? 1 : 0;
        limb[i] = s;
    }
    if (carry) limb.push_back(carry);
}

void BigIndex::sub_small(u64 v) {
    if (cmp_u64(v) < 0) throw IndexTooLow();
    u64 borrow = v;
    for (std::size_t i = 0; borrow && i < limb.size(); ++i) {
        u64 old = limb[i];
        limb[i] = old - borrow;
        borrow = old < borrow ? 1 : 0;
    }
    trim();
}

void BigIndex::mul_small(u64 v) {
    if (v == 0) {
        limb.clear();
        return;
    }
    u64 carry = 0;
    for (auto& l : limb) {
        u128 prod = u128(l) * v + carry;
        l = u64(prod);
        carry = u64(prod >> 64);
    }
    if (carry) limb.push_back(carry);
}

u64 BigIndex::divmod_small(u64 d) {
    u64 rem = 0;
    for (std::size_t i = limb.size(); i-- > 0;) {
        u128 cur = (u128(rem) << 64) | limb[i];
        limb[i] = u64(cur / d);
        rem = u64(cur % d);
    }
    trim();
    return rem;
}

u64 BigIndex::mod_small(u64 d) const {
    u64 rem = 0;
    for (std::size_t i = limb.size(); i-- > 0;) rem = u64(((u128(rem) << 64) | limb[i]) % d);
    return rem;
}

std::string BigIndex::to_string() const {
    if (is_zero()) return "0";
    constexpr u64 CHUNK = 10000000000000000000ull;  // 10^19
    BigIndex t = *this;
    std::vector<u64> parts;
    while (!t.is_zero()) parts.push_back(t.divmod_small(CHUNK));
    std::string s = std::to_string(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
        std::string piece = std::to_string(parts[i]);
        s += std::string(19 - piece.size(), '0') + piece;
    }
    return s;
}

std::size_t BigIndex::ndigits10() const { return to_string().size(); }

std::vector<u64> BigIndex::digits(u64 p) const {
    BigIndex t = *this;
    std::vector<u64> d;
    if (t.is_zero()) return {0};
    while (!t.is_zero()) d.push_back(t.divmod_small(p));
    return d;
}

std::vector<u64> radix_digits(const BigIndex& n, u64 p) {
    std::vector<u64> d = n.digits(p);
    std::reverse(d.begin(), d.end());
    return d;
}

static BigIndex parse_decimal(std::string_view s, std::size_t base_pos) {
    if (s.empty()) throw ParseError("empty number", base_pos);
    BigIndex r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch < '0' || ch > '9') throw ParseError("expected digit", base_pos + i);
        r.mul_small(10);
        r.add_small(u64(ch - '0'));
    }
    return r;
}

static BigIndex pow10_big(std::string_view kstr, std::size_t base_pos) {
    BigIndex k = parse_decimal(kstr, base_pos);
    if (k.cmp_u64(1000000) > 0) throw ParseError("exponent too large", base_pos);
    u64 ke = k.to_u64();
    BigIndex r(1);
    for (u64 i = 0; i < ke; ++i) r.mul_small(10);
    return r;
}

BigIndex parse_index(std::string_view s) {
    std::size_t star = s.find('*');
    std::string_view mant, rest = s;
    std::size_t rest_pos = 0;
    if (star != std::string_view::npos) {
        mant = s.substr(0, star);
        rest = s.substr(star + 1);
        rest_pos = star + 1;
    }
    BigIndex r;
    if (rest.size() >= 3 && rest.substr(0, 3) == "10^") {
        r = pow10_big(rest.substr(3), rest_pos + 3);
    } else {
        if (star != std::string_view::npos) throw ParseError("expected 10^k after '*'", rest_pos);
        r = parse_decimal(rest, 0);
    }
    if (star != std::string_view::npos) {
        BigIndex a = parse_decimal(mant, 0);
        if (a.limb.size() > 1) throw ParseError("mantissa too large", 0);
        r.mul_small(a.to_u64());
    }
    return r;
}

}  // namespace nth

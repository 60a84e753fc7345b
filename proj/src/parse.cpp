#include "nthcoeff/parse.hpp"

#include "nthcoeff/errors.hpp"

namespace nth {

namespace {

constexpr u64 MAX_EXPONENT = 100000;
constexpr std::size_t MAX_GRID = 50u << 20;

struct Parser {
    std::string_view s;
    std::size_t pos = 0;
    const PrimeField& F;

    explicit Parser(std::string_view text, const PrimeField& f) : s(text), F(f) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    BiPoly checked_mul(const BiPoly& a, const BiPoly& b) {
        if (!a.is_zero() && !b.is_zero() &&
            (a.nx + b.nx - 1) * (a.ny + b.ny - 1) > MAX_GRID)
            fail("product degree too large");
        return bipoly_mul(a, b);
    }

    u64 parse_number_mod_p() {
        skip_ws();
        std::size_t start = pos;
        u64 acc = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            acc = F.add(F.mul(acc, F.norm(10)), F.norm(u64(s[pos] - '0')));
            ++pos;
        }
        if (pos == start) fail("expected number");
        return acc;
    }

    u64 parse_exponent() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && s[pos] == '-') throw NonconformingExponent("negative exponent", pos);
        u64 acc = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            acc = acc * 10 + u64(s[pos] - '0');
            if (acc > MAX_EXPONENT) throw NonconformingExponent("exponent too large", start);
            ++pos;
        }
        if (pos == start) fail("expected exponent");
        return acc;
    }

    BiPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            BiPoly v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '-') {
            ++pos;
            return bipoly_neg(parse_factor());
        }
        if (c == 'x' || c == 'y') {
            ++pos;
            BiPoly v(F, c == 'x' ? 2 : 1, c == 'x' ? 1 : 2);
            v.a.back() = 1;
            return v;
        }
        if (c >= '0' && c <= '9') return BiPoly::constant(F, parse_number_mod_p());
        fail("unexpected character");
    }

    BiPoly parse_factor() {
        BiPoly base = parse_atom();
        if (eat('^')) {
            u64 e = parse_exponent();
            BiPoly r = BiPoly::constant(F, 1);
            while (e) {
                if (e & 1) r = checked_mul(r, base);
                e >>= 1;
                if (e) base = checked_mul(base, base);
            }
            if (peek('^')) fail("chained '^' needs parentheses");
            return r;
        }
        return base;
    }

    BiPoly parse_term() {
        BiPoly v = parse_factor();
        while (eat('*')) v = checked_mul(v, parse_factor());
        return v;
    }

    BiPoly parse_expr() {
        BiPoly v(F);
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        v = parse_term();
        if (negate) v = bipoly_neg(v);
        for (;;) {
            if (eat('+'))
                v = bipoly_add(v, parse_term());
            else if (eat('-'))
                v = bipoly_sub(v, parse_term());
            else
                return v;
        }
    }
};

}  // namespace

BiPoly parse_poly(std::string_view text, const PrimeField& F) {
    Parser P(text, F);
    BiPoly v = P.parse_expr();
    P.skip_ws();
    if (P.pos != text.size()) P.fail("trailing input");
    return v;
}

}  // namespace nth

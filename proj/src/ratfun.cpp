#include "nthcoeff/ratfun.hpp"

#include <stdexcept>

namespace nth {

RationalFunction::RationalFunction(UniPoly n, UniPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::logic_error("rational function with zero denominator");
    if (num.is_zero()) {
        den = UniPoly::one(den.F);
        return;
    }
    UniPoly g = gcd(num, den);
    if (!g.is_zero() && g.degree() > 0) {
        num = *try_exact_div(num, g);
        den = *try_exact_div(den, g);
    }
    u64 l = den.lc();
    if (l != 1) {
        u64 il = den.F.inv(l);
        den = scale(den, il);
        num = scale(num, il);
    }
}

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(add(upoly_mul(a.num, b.den), upoly_mul(b.num, a.den)),
                            upoly_mul(a.den, b.den));
}

RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(sub(upoly_mul(a.num, b.den), upoly_mul(b.num, a.den)),
                            upoly_mul(a.den, b.den));
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(upoly_mul(a.num, b.num), upoly_mul(a.den, b.den));
}

RationalFunction rf_mul_poly(const RationalFunction& a, const UniPoly& p) {
    return RationalFunction(upoly_mul(a.num, p), a.den);
}

RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::logic_error("rational function division by zero");
    return RationalFunction(upoly_mul(a.num, b.den), upoly_mul(a.den, b.num));
}

}  // namespace nth

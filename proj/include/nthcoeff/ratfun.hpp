#pragma once

#include "nthcoeff/upoly.hpp"

namespace nth {

// num/den with den monic and gcd(num, den) = 1; canonical, so == is
// structural equality.
struct RationalFunction {
    UniPoly num;
    UniPoly den;

    explicit RationalFunction(const PrimeField& f)
        : num(UniPoly::zero(f)), den(UniPoly::one(f)) {}
    RationalFunction(UniPoly n, UniPoly d);

    static RationalFunction of(const UniPoly& p) { return RationalFunction(p, UniPoly::one(p.F)); }

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return den == UniPoly::one(den.F); }

    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }
};

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_mul_poly(const RationalFunction& a, const UniPoly& p);
RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b);

}  // namespace nth

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nthcoeff/fp.hpp"
#include "nthcoeff/upoly.hpp"

namespace nth {

// Dense bivariate polynomial over F_p with tight degree bounds: a[j*nx + i]
// is the coefficient of x^i y^j, 0 <= i < nx, 0 <= j < ny.  The zero
// polynomial has nx = ny = 0.  After every public operation the bounds are
// tight (some entry in the last row and in the last column is nonzero).
struct BiPoly {
    PrimeField F;
    std::size_t nx = 0, ny = 0;
    std::vector<u64> a;

    explicit BiPoly(const PrimeField& f) : F(f) {}
    BiPoly(const PrimeField& f, std::size_t nx_, std::size_t ny_)
        : F(f), nx(nx_), ny(ny_), a(nx_ * ny_, 0) {}

    static BiPoly zero(const PrimeField& f) { return BiPoly(f); }
    static BiPoly constant(const PrimeField& f, u64 c);

    bool is_zero() const { return a.empty(); }
    u64 at(std::size_t i, std::size_t j) const {
        return (i < nx && j < ny) ? a[j * nx + i] : 0;
    }
    u64& ref(std::size_t i, std::size_t j) { return a[j * nx + i]; }

    int degx() const;
    int degy() const;
    void trim();

    // coefficient of y^j as a univariate polynomial in x
    UniPoly y_coeff(std::size_t j) const;
    // build from y-coefficients (index = power of y)
    static BiPoly from_y_coeffs(const PrimeField& f, const std::vector<UniPoly>& rows);

    // partial derivative with respect to y
    BiPoly dy() const;

    u64 eval(u64 x0, u64 y0) const;

    bool operator==(const BiPoly& o) const { return nx == o.nx && ny == o.ny && a == o.a; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }
};

BiPoly bipoly_add(const BiPoly& u, const BiPoly& v);
BiPoly bipoly_sub(const BiPoly& u, const BiPoly& v);
BiPoly bipoly_neg(const BiPoly& u);
BiPoly bipoly_scale(const BiPoly& u, u64 k);

// product via Kronecker substitution y -> x^(nx_u + nx_v - 1)
BiPoly bipoly_mul(const BiPoly& u, const BiPoly& v);

// result_{k,l} = v_{pk+r, pl+r}; throws BadDigit if r >= p
BiPoly section_bi(const BiPoly& v, u64 r);

// Fraction-free power of y modulo E (viewed as monic-after-clearing in y):
// y^D ≡ (r_0(x) + ... + r_{d-1}(x) y^{d-1}) / e_d(x)^e  (mod E),
// where e_d is the leading y-coefficient of E and e = D-d+1 for D >= d
// (the representation is normalized up to this exponent even when fewer
// reduction steps were needed).  For D < d the monomial itself is returned
// with e = 0.  Requires d >= 1.
std::pair<std::vector<UniPoly>, u64> bipoly_powmod_y(const BiPoly& E, u64 D);

// throws InvalidInput unless E(0,0) = 0, E_y(0,0) != 0 and deg_y E >= 1
void check_algebraic_input(const BiPoly& E);

}  // namespace nth

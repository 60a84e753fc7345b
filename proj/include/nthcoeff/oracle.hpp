#pragma once

#include "nthcoeff/bigindex.hpp"
#include "nthcoeff/bipoly.hpp"

namespace nth {

// f mod x^n for the unique series root with f(0) = 0
struct SeriesPrefix {
    UniPoly prefix;
    std::size_t n;
};

// Newton/Kung-Traub iteration, precision doubling each round.  If
// iterations is non-null it receives the number of rounds performed.
SeriesPrefix expand_newton(const BiPoly& E, std::size_t n, int* iterations = nullptr);

// Coefficient-by-coefficient solve; an independent code path from Newton.
SeriesPrefix expand_undetermined(const BiPoly& E, std::size_t n);

// Coefficient of x^N in the Catalan series y - x - y^2 = 0, i.e. the
// Catalan number C_{N-1} mod p, via Lucas' theorem on
// C(2n,n) - C(2n,n+1) with n = N-1.  Returns 0 for N = 0.
u64 catalan_mod_p(const BigIndex& N, const PrimeField& F);

}  // namespace nth

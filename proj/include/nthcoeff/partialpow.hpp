#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nthcoeff/bigindex.hpp"
#include "nthcoeff/bipoly.hpp"
#include "nthcoeff/diagonal.hpp"
#include "nthcoeff/ratfun.hpp"

namespace nth {

// b(x/t, t) = sum_{v=-delta_minus}^{delta_plus} b_v(x) t^v, where b_v is the
// v-diagonal sum_i b_{i,i+v} x^i of b.
struct TLaurentPoly {
    PrimeField F;
    int delta_minus = 0, delta_plus = 0;
    std::vector<UniPoly> coeffs;  // index k holds b_{k - delta_minus}

    const UniPoly& at_v(int v) const { return coeffs[std::size_t(v + delta_minus)]; }
};

TLaurentPoly t_laurent(const BiPoly& b);

// Delta = ([-d_y, d_x] + pZ) intersect [(1-p)delta_minus, (p-1)delta_plus],
// ascending: the only diagonal offsets of b^{p-1} the digit matrices can read.
std::vector<long long> useful_deltas(std::size_t dx, std::size_t dy, int delta_minus,
                                     int delta_plus, u64 p);

// t^n mod P*(t), where P* is the reciprocal of P(t) = t^delta_minus b(x/t,t),
// kept with polynomial coefficients: the pair means (r[0] + r[1] t + ...) /
// lc^denom_exp with lc the leading t-coefficient of P*.
struct FractionFreePower {
    std::vector<UniPoly> r;
    u64 denom_exp = 0;
};

FractionFreePower tpower_mod_reciprocal(const TLaurentPoly& tl, u64 n);

// c_u(x) = [t^u] 1/b(x/t,t), via the linear recurrence the c's satisfy
RationalFunction c_coefficient(const TLaurentPoly& tl, long long u);

// delta-diagonal sum_i B_{i,i+delta} x^i of B = b^{p-1}, without computing B
UniPoly partial_power(const BiPoly& b, long long delta);

// the diagonals of B = b^{p-1} for every offset the digit matrices can touch
struct SparseDiagonalTable {
    PrimeField F;
    int delta_minus = 0, delta_plus = 0;
    std::map<long long, UniPoly> pi;

    // B_{alpha,beta}, served from the stored diagonals
    u64 coeff(long long alpha, long long beta) const;
};

SparseDiagonalTable sparse_power(const BiPoly& b);

// digit matrix read from the sparse table instead of the full power
std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const SparseDiagonalTable& T, u64 r);

struct FastLinearRep {
    PrimeField F;
    std::size_t dx = 0, dy = 0, m = 0;
    std::vector<u64> L, C;  // as in LinearRep; C pre-divided by b(0,0)
    SparseDiagonalTable table;

    FastLinearRep(const DiagonalRep& rep, SparseDiagonalTable t);
    const std::vector<u64>& matrix(u64 r) const;

  private:
    struct Cache {
        std::mutex mu;
        std::map<u64, std::vector<u64>> by_digit;
    };
    std::shared_ptr<Cache> cache_;
};

u64 linrep_coeff(const FastLinearRep& lr, const BigIndex& N);

FastLinearRep diagonal_fast_precompute(const BiPoly& E);

u64 coeff_via_diagonal_fast(const BiPoly& E, const BigIndex& N);

}  // namespace nth

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nthcoeff/bigindex.hpp"
#include "nthcoeff/bipoly.hpp"
#include "nthcoeff/kernels.hpp"

namespace nth {

// f = Diag(a/b) with a = y E_y(xy, y), b = E(xy, y)/y; b(0,0) != 0.
struct DiagonalRep {
    PrimeField F;
    BiPoly a, b;
    std::size_t dx = 0, dy = 0;  // joint partial degree bounds of a and b
    u64 b00 = 0;
};

DiagonalRep furstenberg(const BiPoly& E);

// b^{p-1} in a compact grid (16- or 32-bit cells depending on p), for sizes
// where 64-bit coefficients would not fit in memory.
struct PackedPower {
    std::size_t nx = 0, ny = 0;
    bool wide = false;
    std::vector<std::uint16_t> c16;
    std::vector<std::uint32_t> c32;

    u64 at(std::size_t i, std::size_t j) const {
        if (i >= nx || j >= ny) return 0;
        return wide ? c32[j * nx + i] : c16[j * nx + i];
    }
};

// b^{p-1} by the Frobenius quotient b(x^p, y^p)/b, filled cell by cell
PackedPower dense_power_packed(const BiPoly& b);

// b^{p-1} as a plain BiPoly: binary powering with Kronecker products below a
// size threshold, the packed quotient above it; throws InvalidInput when the
// result cannot fit in memory
BiPoly full_power(const BiPoly& b);

// T_r v = S_r(v b^{p-1}); lands back in the (dx, dy) rectangle
BiPoly pseudo_section(const BiPoly& v, const BiPoly& B, u64 r);

// m x m row-major matrix of T_r on the monomial basis of the rectangle,
// m = (1+dx)(1+dy), basis index (i,j) -> i*(1+dy)+j
std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const BiPoly& B, u64 r);
std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const PackedPower& B, u64 r);
std::vector<u64> matrix_for_digit(const DiagonalRep& rep, const BiPoly& B, u64 r);

// (L, (A_r), C/b00) with the digit matrices built lazily on first use
struct LinearRep {
    PrimeField F;
    std::size_t dx = 0, dy = 0, m = 0;
    std::vector<u64> L, C;  // C holds the coordinates of a, divided by b(0,0)
    BiPoly B;

    LinearRep(const DiagonalRep& rep, BiPoly Bpow);
    const std::vector<u64>& matrix(u64 r) const;

  private:
    struct Cache {
        std::mutex mu;
        std::map<u64, std::vector<u64>> by_digit;
    };
    std::shared_ptr<Cache> cache_;
};

LinearRep make_linear_rep(const DiagonalRep& rep, BiPoly B);

namespace detail {

// w <- A_{N_0} C, then w <- A_{N_i} w (least significant digit first), L w.
// Rep provides F, m, L, C and matrix(r).
template <class Rep>
u64 fold_digit_matrices(const Rep& lr, const BigIndex& N) {
    const std::size_t m = lr.m;
    std::vector<u64> w = lr.C, next(m);
    for (u64 r : N.digits(lr.F.p)) {
        const std::vector<u64>& A = lr.matrix(r);
        for (std::size_t row = 0; row < m; ++row) {
            u64 acc = 0;
            const u64* arow = A.data() + row * m;
            for (std::size_t col = 0; col < m; ++col)
                if (w[col]) acc = lr.F.add(acc, lr.F.mul(arow[col], w[col]));
            next[row] = acc;
        }
        w.swap(next);
        kernels::add_work(u64(m) * u64(m));
    }
    u64 out = 0;
    for (std::size_t k = 0; k < m; ++k)
        if (lr.L[k]) out = lr.F.add(out, lr.F.mul(lr.L[k], w[k]));
    return out;
}

}  // namespace detail

// f_N = L A_{N_l} ... A_{N_0} C/b00 over the base-p digits of N
u64 linrep_coeff(const LinearRep& lr, const BigIndex& N);

LinearRep diagonal_precompute(const BiPoly& E);

u64 coeff_via_diagonal(const BiPoly& E, const BigIndex& N);

}  // namespace nth

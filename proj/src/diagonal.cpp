#include "nthcoeff/diagonal.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nthcoeff/errors.hpp"
#include "nthcoeff/kernels.hpp"

namespace nth {

namespace {

// Largest b^{p-1} (in stored entries) still computed by plain binary powering.
constexpr std::size_t kSmallEntries = std::size_t(1) << 22;
// Hard memory budget for any dense power grid, in bytes.
constexpr std::size_t kMaxBytes = std::size_t(3500) << 20;

BiPoly pow_binary(const BiPoly& b, u64 e) {
    BiPoly r = BiPoly::constant(b.F, 1);
    BiPoly base = b;
    while (e) {
        if (e & 1) r = bipoly_mul(r, base);
        e >>= 1;
        if (e) base = bipoly_mul(base, base);
    }
    return r;
}

}  // namespace

DiagonalRep furstenberg(const BiPoly& E) {
    check_algebraic_input(E);
    const PrimeField& F = E.F;
    const std::size_t h = std::size_t(E.degx() < 0 ? 0 : E.degx());
    const std::size_t d = std::size_t(E.degy());  // >= 1 after the input check

    // Substituting x -> xy sends e_ij x^i y^j to e_ij x^i y^{i+j}; the partial
    // y-derivative times y shifts the same way.  E(0,0) = 0 makes E(xy,y)
    // divisible by y.
    BiPoly a(F, h + 1, h + d + 1);
    BiPoly b(F, h + 1, h + d);
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t i = 0; i <= h; ++i) {
            const u64 e = E.at(i, j);
            if (!e) continue;
            if (j >= 1) a.ref(i, i + j) = F.mul(F.norm(j), e);
            if (i + j >= 1) b.ref(i, i + j - 1) = e;
        }
    a.trim();
    b.trim();

    DiagonalRep rep{F, std::move(a), std::move(b), 0, 0, 0};
    rep.b00 = rep.b.at(0, 0);
    if (rep.b00 == 0) throw InvalidInput("denominator of the diagonal form vanishes at the origin");
    const int ax = rep.a.is_zero() ? 0 : rep.a.degx();
    const int ay = rep.a.is_zero() ? 0 : rep.a.degy();
    rep.dx = std::size_t(std::max(ax, rep.b.degx()));
    rep.dy = std::size_t(std::max(ay, rep.b.degy()));
    return rep;
}

PackedPower dense_power_packed(const BiPoly& b) {
    const PrimeField& F = b.F;
    const u64 p = F.p;
    PackedPower P;
    if (b.is_zero()) return P;  // 0^{p-1} = 0 since p >= 2
    const u64 b00 = b.at(0, 0);
    if (b00 == 0) throw InvalidInput("dense power by quotient needs a unit constant term");

    const u128 nxw = u128(b.nx - 1) * (p - 1) + 1;
    const u128 nyw = u128(b.ny - 1) * (p - 1) + 1;
    const u128 cells = nxw * nyw;
    const bool wide = p > (u64(1) << 16);
    const std::size_t cell = wide ? 4 : 2;
    if (cells > u128(kMaxBytes / cell))
        throw InvalidInput("b^(p-1) exceeds the memory budget");
    const std::size_t nx = std::size_t(nxw), ny = std::size_t(nyw);

    struct Term {
        std::size_t i, j;
        u64 c;
    };
    std::vector<Term> supp;
    for (std::size_t j = 0; j < b.ny; ++j)
        for (std::size_t i = 0; i < b.nx; ++i) {
            const u64 c = b.at(i, j);
            if (c && (i || j)) supp.push_back({i, j, c});
        }
    const u64 ib00 = F.inv(b00);

    // b * b^{p-1} = b(x^p, y^p), so the cells of Q = b^{p-1} follow by forward
    // substitution in row-major order: every term of b other than the constant
    // points at an already-filled cell.
    P.nx = nx;
    P.ny = ny;
    P.wide = wide;
    if (wide)
        P.c32.assign(nx * ny, 0);
    else
        P.c16.assign(nx * ny, 0);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            const u64 frob = (i % p == 0 && j % p == 0) ? b.at(i / p, j / p) : 0;
            u64 v;
            if (!wide) {
                u64 s = 0;  // < |supp| * 2^32, well inside the Barrett range
                for (const Term& t : supp) {
                    if (t.i > i || t.j > j) continue;
                    s += t.c * u64(P.c16[(j - t.j) * nx + (i - t.i)]);
                }
                v = F.mul(F.sub(frob, F.reduce62(s)), ib00);
                P.c16[j * nx + i] = std::uint16_t(v);
            } else {
                u128 s = 0;
                for (const Term& t : supp) {
                    if (t.i > i || t.j > j) continue;
                    s += u128(t.c) * P.c32[(j - t.j) * nx + (i - t.i)];
                }
                v = F.mul(F.sub(frob, u64(s % p)), ib00);
                P.c32[j * nx + i] = u32(v);
            }
        }
    kernels::add_work(u64(supp.size()) * u64(cells));
    return P;
}

BiPoly full_power(const BiPoly& b) {
    const PrimeField& F = b.F;
    const u64 e = F.p - 1;
    if (b.is_zero()) return BiPoly::zero(F);
    const u128 nxw = u128(b.nx - 1) * e + 1;
    const u128 nyw = u128(b.ny - 1) * e + 1;
    const u128 cells = nxw * nyw;
    if (cells <= kSmallEntries) return pow_binary(b, e);
    // Too big for transform-based multiplication; build the grid by the
    // quotient recurrence and widen it to 64-bit coefficients.
    if (cells > u128(kMaxBytes / 10))
        throw InvalidInput("b^(p-1) has about " + std::to_string(double(cells)) +
                           " terms and does not fit in memory");
    if (b.at(0, 0) == 0)
        throw InvalidInput("b^(p-1) is too large for direct powering and b(0,0) = 0 "
                           "blocks the quotient route");
    PackedPower P = dense_power_packed(b);
    BiPoly R(F, P.nx, P.ny);
    for (std::size_t j = 0; j < P.ny; ++j)
        for (std::size_t i = 0; i < P.nx; ++i) R.ref(i, j) = P.at(i, j);
    R.trim();
    return R;
}

BiPoly pseudo_section(const BiPoly& v, const BiPoly& B, u64 r) {
    if (r >= v.F.p) throw BadDigit();
    return section_bi(bipoly_mul(v, B), r);
}

namespace {

// Shared over both storage formats of b^{p-1}; Pow only needs a bounds-checked
// at(i, j) returning the residue of x^i y^j.
template <class Pow>
std::vector<u64> digit_matrix_impl(const PrimeField& F, std::size_t dx, std::size_t dy,
                                   const Pow& B, u64 r) {
    if (r >= F.p) throw BadDigit();
    const std::size_t w = dy + 1;
    const std::size_t m = (dx + 1) * w;
    std::vector<u64> A(m * m, 0);
    // Column (i,j) holds the coordinates of T_r(x^i y^j); its (i',j') entry is
    // the coefficient of x^{p i' + r} y^{p j' + r} in x^i y^j B.
    for (std::size_t ip = 0; ip <= dx; ++ip)
        for (std::size_t jp = 0; jp <= dy; ++jp) {
            const std::size_t row = ip * w + jp;
            const u128 ubase = u128(F.p) * ip + r;
            const u128 vbase = u128(F.p) * jp + r;
            for (std::size_t i = 0; i <= dx; ++i) {
                if (u128(i) > ubase) continue;
                const std::size_t u = std::size_t(ubase - i);
                for (std::size_t j = 0; j <= dy; ++j) {
                    if (u128(j) > vbase) continue;
                    A[row * m + i * w + j] = B.at(u, std::size_t(vbase - j));
                }
            }
        }
    kernels::add_work(u64(m) * u64(m));
    return A;
}

}  // namespace

std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const BiPoly& B, u64 r) {
    return digit_matrix_impl(F, dx, dy, B, r);
}

std::vector<u64> matrix_for_digit(const PrimeField& F, std::size_t dx, std::size_t dy,
                                  const PackedPower& B, u64 r) {
    return digit_matrix_impl(F, dx, dy, B, r);
}

std::vector<u64> matrix_for_digit(const DiagonalRep& rep, const BiPoly& B, u64 r) {
    return matrix_for_digit(rep.F, rep.dx, rep.dy, B, r);
}

LinearRep::LinearRep(const DiagonalRep& rep, BiPoly Bpow)
    : F(rep.F),
      dx(rep.dx),
      dy(rep.dy),
      m((rep.dx + 1) * (rep.dy + 1)),
      L(m, 0),
      C(m, 0),
      B(std::move(Bpow)),
      cache_(std::make_shared<Cache>()) {
    L[0] = 1;
    const u64 ib = F.inv(rep.b00);
    for (std::size_t i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j <= dy; ++j) C[i * (dy + 1) + j] = F.mul(rep.a.at(i, j), ib);
}

const std::vector<u64>& LinearRep::matrix(u64 r) const {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->by_digit.find(r);
    if (it == cache_->by_digit.end())
        it = cache_->by_digit.emplace(r, matrix_for_digit(F, dx, dy, B, r)).first;
    return it->second;
}

LinearRep make_linear_rep(const DiagonalRep& rep, BiPoly B) {
    return LinearRep(rep, std::move(B));
}

u64 linrep_coeff(const LinearRep& lr, const BigIndex& N) {
    return detail::fold_digit_matrices(lr, N);
}

LinearRep diagonal_precompute(const BiPoly& E) {
    DiagonalRep rep = furstenberg(E);
    BiPoly B = full_power(rep.b);
    return LinearRep(rep, std::move(B));
}

u64 coeff_via_diagonal(const BiPoly& E, const BigIndex& N) {
    return linrep_coeff(diagonal_precompute(E), N);
}

}  // namespace nth

#pragma once

#include <vector>

#include "nthcoeff/bigindex.hpp"
#include "nthcoeff/bipoly.hpp"

namespace nth {

// Minimal-order equation sum_k c_k(x) f(x^{p^k}) = 0 satisfied by the root
// of E, with polynomial coefficients normalized so the tuple is primitive
// and c_K has leading coefficient 1.
struct MahlerEquation {
    std::size_t K = 0;
    std::vector<UniPoly> c;  // c_0..c_K
    std::size_t v0 = 0, d0 = 0;
};

// Monic form h = rhs + sum_k a_k h(x^{p^k}) for the nonnegative part h of
// f/c_0, plus everything a coefficient query needs.
struct MonicMahlerData {
    std::vector<UniPoly> a;  // a_1..a_K at indices 0..K-1
    UniPoly rhs;
    std::size_t D = 0;  // common degree bound
    u64 h0 = 0;
};

struct SectionState {
    UniPoly a;
    std::vector<UniPoly> b;  // b_0..b_K
};

MahlerEquation algeq_to_mahler(const BiPoly& E);

std::vector<UniPoly> monicize(const MahlerEquation& meq, const PrimeField& F);

std::pair<LaurentUniPoly, u64> negative_part_and_h0(const BiPoly& E, const MahlerEquation& meq);

UniPoly compute_rhs(const std::vector<UniPoly>& a, const LaurentUniPoly& g_minus);

SectionState section_step(const SectionState& s, const MonicMahlerData& data, u64 r);

u64 evaluate_state(const SectionState& s, u64 h0, const PrimeField& F);

// Full precomputation shared by all queries against one equation.
struct MahlerPipeline {
    PrimeField F;
    BiPoly E;
    MahlerEquation meq;
    MonicMahlerData monic;
};

MahlerPipeline mahler_precompute(const BiPoly& E);

struct MahlerQueryStats {
    u64 section_calls = 0;
    u64 h_queries = 0;
};

// f_N through the section machine; N <= d0 routes to the series oracle.
u64 mahler_coeff(const MahlerPipeline& mp, const BigIndex& N, MahlerQueryStats* stats = nullptr);

u64 coeff_via_mahler(const BiPoly& E, const BigIndex& N);

// The set of h-indices the radix recurrence for f_N touches: the closure of
// {N-j : c_{0,j} != 0} under n -> (n-j)/p^k over the supports of the monic
// coefficients, plus the base index 0.  Sorted ascending.  Also usable as an
// independent evaluator: out_value receives f_N computed by memoized
// recursion instead of section stepping.
std::vector<BigIndex> mahler_touched_indices(const MahlerPipeline& mp, const BigIndex& N,
                                             u64* out_value = nullptr);

// Rough work prediction for a query at ndigits decimal digits, used by
// callers that want to skip infeasible instances; explicit requests should
// just call mahler_coeff.
double mahler_predicted_ops(const MahlerPipeline& mp, std::size_t ndigits10);

}  // namespace nth

#pragma once

#include <cstddef>
#include <vector>

#include "nthcoeff/fp.hpp"

// Low-level coefficient-array kernels.  mul() dispatches between schoolbook,
// Karatsuba and a CRT'd number-theoretic transform; the serial schoolbook
// variant is the reference the others are tested against.
namespace nth::kernels {

u64 work();        // cumulative coefficient-multiplication estimate
void reset_work();
void add_work(u64 n);

void set_parallel(bool on);  // gate the OpenMP paths; serial mode is the reference
bool parallel();

// c[0 .. na+nb-2] = a * b; c must not alias a or b; na, nb >= 1
void mul_schoolbook_serial(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                           std::size_t nb, u64* c);
void mul_schoolbook(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                    std::size_t nb, u64* c);
void mul_karatsuba(const PrimeField& F, const u64* a, std::size_t na, const u64* b,
                   std::size_t nb, u64* c);
bool ntt_ok(const PrimeField& F, std::size_t na, std::size_t nb);
void mul_ntt(const PrimeField& F, const u64* a, std::size_t na, const u64* b, std::size_t nb,
             u64* c);
void mul(const PrimeField& F, const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* c);

std::vector<u64> mul_vec(const PrimeField& F, const std::vector<u64>& a,
                         const std::vector<u64>& b);

}  // namespace nth::kernels

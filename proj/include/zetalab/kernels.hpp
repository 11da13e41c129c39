#pragma once

// Hot loops. Every kernel has a plain serial reference and an OpenMP
// version with the same signature; tests compare the two.

#include <cstddef>
#include <vector>

#include "zetalab/common.hpp"

namespace zl::kernels {

namespace serial {

// out[j] = du * sum_k H[k] exp(-i s[j] (u0 + k du))
void mellin(const cplx* H, std::size_t n, double u0, double du, const cplx* s, std::size_t ns,
            cplx* out);

// out[m] = du * sum_j a[m-j] b[j], m = 0 .. na+nb-2
void mconvolve(const cplx* a, std::size_t na, const cplx* b, std::size_t nb, double du, cplx* out);

// sum_ij A(i,j) B(j,i), column-major n x n
cplx trace_product(const cplx* A, const cplx* B, std::size_t n);
double trace_product(const double* A, const double* B, std::size_t n);

} // namespace serial

namespace parallel {

void mellin(const cplx* H, std::size_t n, double u0, double du, const cplx* s, std::size_t ns,
            cplx* out);
void mconvolve(const cplx* a, std::size_t na, const cplx* b, std::size_t nb, double du, cplx* out);
cplx trace_product(const cplx* A, const cplx* B, std::size_t n);
double trace_product(const double* A, const double* B, std::size_t n);

} // namespace parallel

double pairwise_sum(const double* x, std::size_t n);
cplx pairwise_sum(const cplx* x, std::size_t n);

} // namespace zl::kernels

#include "zetalab/kernels.hpp"

#include <omp.h>

namespace zl {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::pole: return "pole";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::decay_cutoff: return "decay cutoff";
    case ErrorKind::missed_zero: return "missed zero";
    case ErrorKind::insufficient_table: return "insufficient zero table";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::monotonicity: return "monotonicity error";
    case ErrorKind::degenerate: return "degenerate input";
    case ErrorKind::support_overflow: return "support overflow";
    case ErrorKind::headroom: return "headroom";
    case ErrorKind::non_unimodular: return "non-unimodular symbol";
    case ErrorKind::condition_violation: return "condition violation";
  }
  return "error";
}

const char* version() { return ZETALAB_VERSION; }

namespace kernels {

namespace {

template <class T>
T pairwise(const T* x, std::size_t n) {
  if (n <= 16) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

// exp(-i s u_k) by rotation, re-seeded every block to bound drift
void mellin_one(const cplx* H, std::size_t n, double u0, double du, cplx s, cplx& out) {
  constexpr std::size_t block = 64;
  const cplx I(0.0, 1.0);
  const cplx w = std::exp(-I * s * du);
  cplx acc = 0.0;
  for (std::size_t k0 = 0; k0 < n; k0 += block) {
    cplx z = std::exp(-I * s * (u0 + static_cast<double>(k0) * du));
    std::size_t k1 = std::min(n, k0 + block);
    for (std::size_t k = k0; k < k1; ++k) {
      acc += H[k] * z;
      z *= w;
    }
  }
  out = acc * du;
}

} // namespace

double pairwise_sum(const double* x, std::size_t n) { return pairwise(x, n); }
cplx pairwise_sum(const cplx* x, std::size_t n) { return pairwise(x, n); }

namespace serial {

void mellin(const cplx* H, std::size_t n, double u0, double du, const cplx* s, std::size_t ns,
            cplx* out) {
  const cplx I(0.0, 1.0);
  for (std::size_t j = 0; j < ns; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += H[k] * std::exp(-I * s[j] * (u0 + static_cast<double>(k) * du));
    out[j] = acc * du;
  }
}

void mconvolve(const cplx* a, std::size_t na, const cplx* b, std::size_t nb, double du, cplx* out) {
  std::size_t m = na + nb - 1;
  for (std::size_t i = 0; i < m; ++i) out[i] = 0.0;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  for (std::size_t i = 0; i < m; ++i) out[i] *= du;
}

cplx trace_product(const cplx* A, const cplx* B, std::size_t n) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += A[i + j * n] * B[j + i * n];
  return s;
}

double trace_product(const double* A, const double* B, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += A[i + j * n] * B[j + i * n];
  return s;
}

} // namespace serial

namespace parallel {

void mellin(const cplx* H, std::size_t n, double u0, double du, const cplx* s, std::size_t ns,
            cplx* out) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(ns); ++j)
    mellin_one(H, n, u0, du, s[j], out[j]);
}

void mconvolve(const cplx* a, std::size_t na, const cplx* b, std::size_t nb, double du, cplx* out) {
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(na + nb - 1);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, i - static_cast<std::ptrdiff_t>(na) + 1);
    std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(i, static_cast<std::ptrdiff_t>(nb) - 1);
    cplx acc = 0.0;
    for (std::ptrdiff_t j = jlo; j <= jhi; ++j) acc += a[i - j] * b[j];
    out[i] = acc * du;
  }
}

template <class T>
static T trace_product_impl(const T* A, const T* B, std::size_t n) {
  // column i of B against row i of A; fixed order inside a row, pairwise across rows
  std::vector<T> part(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    T acc{};
    for (std::size_t j = 0; j < n; ++j) acc += A[i + j * n] * B[j + i * n];
    part[i] = acc;
  }
  return pairwise(part.data(), n);
}

cplx trace_product(const cplx* A, const cplx* B, std::size_t n) { return trace_product_impl(A, B, n); }
double trace_product(const double* A, const double* B, std::size_t n) {
  return trace_product_impl(A, B, n);
}

} // namespace parallel

} // namespace kernels
} // namespace zl

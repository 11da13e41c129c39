#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zetalab/common.hpp"
#include "zetalab/specfun.hpp"

namespace zl {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// uniform grid on [-s_max, s_max], n even
struct SpectralGrid {
  double s_max = 40.0;
  std::size_t n = 1024;

  SpectralGrid() = default;
  SpectralGrid(std::size_t n, double s_max);

  double step() const { return 2.0 * s_max / static_cast<double>(n - 1); }
  double point(std::size_t i) const { return -s_max + step() * static_cast<double>(i); }
  std::vector<double> points() const;
  double weight(std::size_t) const { return step(); }
};

// Kernel k(s_i, t_j) stored already multiplied by the quadrature weight, so
// that composition is plain matrix multiplication and Tr = sum of the diagonal.
struct KernelOperator {
  SpectralGrid grid;
  Matrix matrix;

  cplx kernel(std::size_t i, std::size_t j) const { return matrix(i, j) / grid.weight(j); }
  cplx trace() const { return matrix.trace(); }
  Vector apply(const Vector& v) const { return matrix * v; }

  KernelOperator operator*(const KernelOperator& o) const { return {grid, matrix * o.matrix}; }
  KernelOperator operator+(const KernelOperator& o) const { return {grid, matrix + o.matrix}; }
  KernelOperator operator-(const KernelOperator& o) const { return {grid, matrix - o.matrix}; }
};

KernelOperator identity_op(const SpectralGrid& grid);
KernelOperator multiplication_op(const SpectralGrid& grid, const Vector& f);

// raw principal-value kernel (1/(i pi)) / (s - t), zero diagonal
KernelOperator pv_op(const SpectralGrid& grid);
// sign of the PV matrix; F^2 = 1
KernelOperator hilbert_op(const SpectralGrid& grid);

KernelOperator qdiff(const KernelOperator& F, const Vector& f);
KernelOperator d_graded(const KernelOperator& F, const KernelOperator& omega, int degree);

// Pi_[a,b]: indicator of the frequency band [a, b] (cycles per unit s),
// conjugated by the grid Fourier pair. Infinite ends are allowed.
KernelOperator band_projection(const SpectralGrid& grid, double a, double b);

struct Symbol {
  enum class Kind { constant, blaschke, uinf, up };
  Kind kind = Kind::constant;
  long p = 0;
  double phase = 0.0;

  cplx operator()(double s) const;
  // (log u)'(s)
  cplx dlog(double s) const;
  std::string name() const;
};

// "const[:phase=..]", "blaschke", "uinf", "up:p=2"
Symbol parse_symbol(const std::string& spec);
Vector symbol_values(const Symbol& u, const SpectralGrid& grid);

// Hilbert transform with its spectral projection, assembled once per grid
class QuantizedCalculus {
 public:
  explicit QuantizedCalculus(const SpectralGrid& grid);

  const SpectralGrid& grid() const { return grid_; }
  const KernelOperator& F() const { return F_; }
  const Matrix& P() const { return P_; }
  // P X without a complex n x n product
  Matrix apply_P(const Matrix& X) const;

  // orthonormal columns spanning the resolved band (|s| <= s_max/2, |x| <= bandwidth)
  const Matrix& resolved() const { return Q_; }

  KernelOperator qdiff(const Vector& f) const { return zl::qdiff(F_, f); }
  // u^{-1} du
  KernelOperator dlog_op(const Vector& u) const;
  // T = P u* (1-P) u P
  KernelOperator li_operator(const Vector& u) const;

 private:
  SpectralGrid grid_;
  KernelOperator F_;
  Eigen::MatrixXd G_;
  Matrix P_;
  Matrix Q_;
};

inline constexpr double resolved_bandwidth = 2.0;

Matrix resolved_subspace(const SpectralGrid& grid, double bandwidth = resolved_bandwidth,
                         double threshold = 0.5);

// largest singular value, power iteration on X* X
double operator_norm(const Matrix& X, double tol = 1e-8, int max_iter = 2000);

struct InnerDiagnostics {
  double c1 = 0.0;  // ||T + u^{-1} du / 2||
  double c2 = 0.0;  // positive part of u^{-1} du
  double c3 = 0.0;  // ||P u (1-P)||
  std::size_t resolved_rank = 0;
};

inline constexpr double unimodular_tol = 1e-10;

InnerDiagnostics inner_diagnostics(const QuantizedCalculus& qc, const Vector& u);
InnerDiagnostics inner_diagnostics(const QuantizedCalculus& qc, const Symbol& u);

struct TraceProductCheck {
  int trials = 0;
  double min_trace = 0.0;
  bool pass = false;
};

// Tr(AB) >= -1e-12 over seeded random PSD pairs
TraceProductCheck trace_product_check(std::uint64_t seed, int trials = 100, std::size_t n = 64);

// Tr(Pi_[-B,B] M_a u^{-1} du M_b) and its diagonal limit (i/pi) int a b (log u)'
struct DiagonalTrace {
  cplx trace;
  cplx reference;
};
DiagonalTrace diagonal_trace(const QuantizedCalculus& qc, const Vector& a, const Vector& b,
                             const Symbol& u, double band = resolved_bandwidth);

// Tr(M_hhat (u^{-1} du / 2) Pi_[-B, c] + M_hhat Pi_[0, c]), c = log(Lambda)/pi, u = u_inf
cplx cutoff_trace(const QuantizedCalculus& qc, const Vector& hhat, double lambda,
                  double band = resolved_bandwidth);

} // namespace zl

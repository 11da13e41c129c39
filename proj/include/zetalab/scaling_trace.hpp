#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "zetalab/mult_testfn.hpp"
#include "zetalab/qcalc.hpp"

namespace zl {

// Even functions on the line, stored on the half line at the cell centres
// x_k = (k + 1/2) / sqrt(2n). On this grid the cosine transform is the
// orthogonal DCT-IV matrix.
struct HalfLineGrid {
  std::size_t n = 4096;

  HalfLineGrid() = default;
  explicit HalfLineGrid(std::size_t n);

  double spacing() const { return 1.0 / std::sqrt(2.0 * static_cast<double>(n)); }
  double x(std::size_t k) const { return (static_cast<double>(k) + 0.5) * spacing(); }
  double x_max() const { return std::sqrt(0.5 * static_cast<double>(n)); }
  double x_min() const { return 1.0 / x_max(); }
  std::vector<double> nodes() const;
  Eigen::VectorXd sample(const std::function<double(double)>& f) const;
};

struct CutoffConfig {
  double lambda = 4.0;
};

// lambda > 1 and lambda <= x_max / 2
void validate(const CutoffConfig& cfg, const HalfLineGrid& grid);

// (F f)(y) = 2 int_0^inf f(x) cos(2 pi x y) dx as a matrix on samples
Eigen::MatrixXd cosine_fourier(const HalfLineGrid& grid);

// xi -> xi(. / lambda), windowed sinc interpolation with even reflection at 0
Eigen::MatrixXd dilation_op(double lambda, const HalfLineGrid& grid);

// theta(f) xi (x) = int f(lambda) xi(x/lambda) d*lambda, real f
Eigen::MatrixXd scaling_rep(const LogGridFunction& f, const HalfLineGrid& grid);

// Tr(theta(f) Q P), P = 1_{[0, lambda]}, Q = F P F
double trace_RLambda(const LogGridFunction& f, const HalfLineGrid& grid, const CutoffConfig& cfg);
// same trace for a prebuilt theta(f) and Fourier matrix
double trace_RLambda(const Eigen::MatrixXd& theta_f, const Eigen::MatrixXd& C, const HalfLineGrid& grid,
                     const CutoffConfig& cfg);

struct TraceFit {
  std::vector<double> lambdas;
  std::vector<double> traces;
  double slope = 0.0;      // against 2 log lambda
  double intercept = 0.0;
  double max_residual = 0.0;
  double span = 0.0;
  double f_at_1 = 0.0;
  double archimedean = 0.0;  // Delta_inf of lambda^{1/2} f
};

TraceFit trace_fit(const LogGridFunction& f, const std::vector<double>& lambdas, const HalfLineGrid& grid);

struct FactorizationCheck {
  double defect = 0.0;
  std::vector<double> per_vector;
};

// sup over the test family of |F xi - w^-1 I F_C^-1 u F_C w xi| relative to
// sup |F xi| on [4 x_min, x_max / 4]; use_u = false replaces u_inf by 1
FactorizationCheck fourier_factorization_check(const HalfLineGrid& grid, bool use_u = true);

// even test family: gaussians, x^2 gaussian and the Kahane image of the gaussian
std::vector<std::function<double(double)>> factorization_family();

struct CutoffIdentityCheck {
  double scaling_side = 0.0;
  double qcalc_side = 0.0;
  double discrepancy = 0.0;  // relative
};

CutoffIdentityCheck cutoff_identity_check(const LogGridFunction& h1, const LogGridFunction& h2, const HalfLineGrid& grid,
                                 const CutoffConfig& cfg, const SpectralGrid& sgrid = SpectralGrid(1024, 40.0));

} // namespace zl

#pragma once

#include <functional>
#include <vector>

#include "zetalab/common.hpp"

namespace zl {

// Even function sampled on the symmetric grid x_k = -x_max + k h, n odd so
// that 0 is a node. Off-grid values use 12-point Lagrange interpolation and
// vanish beyond x_max.
struct EvenSampledFunction {
  double x_max = 40.0;
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double step() const { return 2.0 * x_max / static_cast<double>(samples.size() - 1); }
  double node(std::size_t k) const { return -x_max + step() * static_cast<double>(k); }
  std::size_t center() const { return (samples.size() - 1) / 2; }
  double operator()(double x) const;
  // max |f| at the two ends
  double boundary() const;

  static EvenSampledFunction from_function(const std::function<double(double)>& f, double x_max,
                                           std::size_t n);
};

inline constexpr double decay_tol = 1e-12;
inline constexpr double condition_tol = 1e-8;

void validate_decay(const EvenSampledFunction& f, double tol = decay_tol);

double integral(const EvenSampledFunction& f);
// trapezoid int f(x) exp(-2 pi i x y) dx
double fourier_at(const EvenSampledFunction& f, double y);
// Fourier transform sampled on the same grid
EvenSampledFunction fourier_transform(const EvenSampledFunction& f);

// 5-point centred stencils, zero beyond the ends
std::vector<double> derivative1(const EvenSampledFunction& f);
std::vector<double> derivative2(const EvenSampledFunction& f);

// D(f) = x^2 f'' + 2x f'
EvenSampledFunction kahane_D(const EvenSampledFunction& f);
// x f'', an odd function: returns the samples on the full grid
std::vector<double> kahane_D0(const EvenSampledFunction& f);

struct TwoConditions {
  double value_at_0 = 0.0;
  double integral = 0.0;
  bool hold(double tol = condition_tol) const;
};
TwoConditions two_conditions(const EvenSampledFunction& f);

// E(f)(x) = |x|^{1/2} sum_{n>0} f(nx); throws condition_violation unless
// f(0) = f^(0) = 0 to condition_tol
double map_E(const EvenSampledFunction& f, double x, bool weighted = true);

// sup over log-spaced x in [1/8, 8] of |E(Ff)(x) - E(f)(1/x)|
// weighted = false drops the |x|^{1/2} factor (negative control)
double poisson_identity_check(const EvenSampledFunction& f, bool weighted = true, std::size_t points = 65);

// int f(x) x^{1/2 - is} d*x
cplx mellin_half(const EvenSampledFunction& f, double s);
// int E(f)(x) x^{-is} d*x
cplx mellin_E(const EvenSampledFunction& f, double s);

struct MultiplierCheck {
  std::vector<double> s;
  std::vector<double> rel_error;
  double max_rel_error = 0.0;
};
MultiplierCheck zeta_multiplier_check(const EvenSampledFunction& f, const std::vector<double>& s_list);
// max |[F(Ef)/F(E(Ff))] [M(-s)/M(s)] - u_inf(s)|
double u_ratio_check(const EvenSampledFunction& f, const std::vector<double>& s_list);

// family used by the identity checks
std::vector<EvenSampledFunction> kahane_family(double x_max = 40.0, std::size_t n = 8193);

// Abel-smoothed sum over m coprime to S of m^{-1/2+is}, pole removed, then
// Richardson extrapolation in eps
cplx monoid_sum(const std::vector<long>& S, double s);
cplx monoid_closed_form(const std::vector<long>& S, double s);
double monoid_sum_check(const std::vector<long>& S, const std::vector<double>& s_list);

// phi = C exp(1/(x^2 - delta^2)) on (-delta, delta), unit integral
struct SonineBump {
  explicit SonineBump(double delta);
  double delta;
  double norm;
  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  double hat(double y) const;  // Fourier transform
};

// (D(Pi) * phi)(x) = sum_{n != 0} n^2 phi''(x-n) - 2n phi'(x-n)
double kahane_pi_conv(const SonineBump& phi, double x);

struct SonineResult {
  double delta = 0.0;
  EvenSampledFunction f;
  double position_radius = 0.0;  // |f| < 1e-9 on [0, r)
  double fourier_radius = 0.0;   // |f^| < 1e-6 on [0, r')
  double boundary = 0.0;
};

inline constexpr double sonine_position_tol = 1e-9;
inline constexpr double sonine_fourier_tol = 1e-6;

SonineResult sonine_construct(double delta, std::size_t n = 16385, double x_max = 80.0);

} // namespace zl

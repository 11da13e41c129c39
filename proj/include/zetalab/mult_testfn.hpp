#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zetalab/common.hpp"
#include "zetalab/specfun.hpp"

namespace zl {

// Compactly supported function on (0, inf), sampled uniformly in u = log x
// over [log a, log b]. The end samples are exactly zero.
struct LogGridFunction {
  double log_a = 0.0;
  double log_b = 0.0;
  std::vector<cplx> values;

  std::size_t size() const { return values.size(); }
  double du() const { return (log_b - log_a) / static_cast<double>(values.size() - 1); }
  double a() const;
  double b() const;
  double log_node(std::size_t k) const { return log_a + du() * static_cast<double>(k); }

  // cubic (4-point Lagrange) rule in log x, zero outside the support
  cplx at_log(double u) const;
  cplx operator()(double x) const;

  LogGridFunction scaled(cplx c) const;
  // multiply by x^alpha
  LogGridFunction times_power(double alpha) const;

  static LogGridFunction from_log(double log_a, double log_b, std::size_t n,
                                  const std::function<cplx(double)>& H);
};

inline constexpr std::size_t default_grid = 4096;

// H(u) = exp(k - k/(1-t^2)), t = (u - c)/w, peak value 1
double smooth_bump(double t, double sharpness);
LogGridFunction log_bump(double log_center, double log_half_width, double sharpness = 1.0,
                         std::size_t n = default_grid);
LogGridFunction bump(double a, double b, double sharpness = 1.0, std::size_t n = default_grid);
// exp(-((log x - log center)/width)^2), truncated at 8 widths
LogGridFunction gausslog(double center, double width, std::size_t n = default_grid);

// "bump:a=..,b=..[,k=..]", "bump:center=..,width=..[,k=..]", "gausslog:center=..,width=.."
LogGridFunction parse_testfn(const std::string& spec, std::size_t n = default_grid);

// seeded generator for positivity scans: bump window times a random
// Chebyshev series of degree 6
LogGridFunction random_generator(std::uint64_t seed, double log_center, double log_half_width,
                                 std::size_t n = default_grid, double sharpness = 4.0);

cplx integral_dstar(const LogGridFunction& h);                    // int h d*x
cplx integral_dx(const LogGridFunction& h);                       // int h dx
cplx moment(const LogGridFunction& h, double alpha);              // int h x^alpha d*x

LogGridFunction mconvolve(const LogGridFunction& h1, const LogGridFunction& h2);
LogGridFunction adjoint(const LogGridFunction& h);

cplx mellin_critical(const LogGridFunction& h, cplx s);
std::vector<cplx> mellin_critical(const LogGridFunction& h, const std::vector<double>& s);
// same, on a decimated grid; valid when |h^| is negligible beyond band
std::vector<cplx> mellin_critical(const LogGridFunction& h, const std::vector<double>& s, double band);

struct WeilTestPair {
  LogGridFunction g;
  LogGridFunction h1;
  LogGridFunction h;
};

WeilTestPair make_weil_pair(const LogGridFunction& g);

std::vector<Place> relevant_places(const LogGridFunction& h, bool include_inf);

void write_csv(const LogGridFunction& h, std::ostream& os);
LogGridFunction read_csv(std::istream& is);

} // namespace zl

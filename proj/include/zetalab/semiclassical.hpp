#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zetalab/specfun.hpp"

namespace zl {

// Phase space for H = 2 pi p q inside the box [0, Lambda]^2
struct PhaseConfig {
  double E = 100.0;
  double lambda = 4.0;
};

// E > 0, lambda >= 1, E / 2pi <= lambda^2
void validate(const PhaseConfig& cfg);

// {0 <= q, p <= Lambda, 2 pi p q <= E}
double area_box(const PhaseConfig& cfg);
// {1/Lambda <= q <= Lambda, 0 <= p <= E / (2 pi q)}
double area_white(const PhaseConfig& cfg);

struct Accounting {
  double darkblue = 0.0;
  double unit_rect = 1.0;
  double residual = 0.0;
};

// darkblue = white - box + unit_rect; residual from separate quadratures
// of the four regions. Needs E >= 2 pi.
Accounting accounting(const PhaseConfig& cfg);

enum class Region { box, white, darkblue, unit_rect };

// tensor Gauss-Legendre, split at the hyperbola corner
double region_quadrature(Region r, const PhaseConfig& cfg);
// area of sigma(region) through the Jacobian of sigma
double sigma_image_area(Region r, const PhaseConfig& cfg);

struct MonteCarloArea {
  double area = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

inline constexpr std::uint64_t monte_carlo_samples = 1000000;

// hit counting in a bounding box; integer accumulators, so the result does
// not depend on the thread count
MonteCarloArea area_monte_carlo(Region r, const PhaseConfig& cfg, std::uint64_t seed,
                                std::uint64_t samples = monte_carlo_samples);

using Point = std::array<double, 2>;

// (u, v) -> (exp u, v exp(-u))
Point phi_map(const Point& uv);
// (q, p) -> (Lambda q, p / Lambda)
Point sigma_map(const Point& qp, double lambda);

enum class SymplecticMap { phi, sigma };
Point apply_map(SymplecticMap m, const Point& x, double lambda);
double jacobian_det(SymplecticMap m, const Point& x, double lambda);
// max |det J - 1| at random points in [-2, 2] x [0.1, 4]
double jacobian_check(SymplecticMap m, double lambda, std::uint64_t seed, int points = 100);

inline constexpr double count_constant = 7.0 / 8.0;

// (E/2pi)(log(E/2pi) - 1) + 7/8
double semiclassical_count(double E);

struct CountComparison {
  double E = 0.0;
  double pred = 0.0;
  std::size_t actual = 0;
  double diff = 0.0;
};

CountComparison compare_to_zeros(double E, const ZeroTable& zeros);

// max over lambdas of |darkblue - 1 - (pred - 7/8)|
double lambda_independence(double E, const std::vector<double>& lambdas);

} // namespace zl

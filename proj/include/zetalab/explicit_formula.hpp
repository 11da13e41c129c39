#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/mult_testfn.hpp"
#include "zetalab/specfun.hpp"

namespace zl {

// Global sign of the spectral local terms, fixed by the balance tests.
inline constexpr double kappa = -1.0;

struct SpectralConfig {
  double cutoff = 80.0;
  double max_cutoff = 5120.0;
  double decay_tol = 1e-8;  // relative to int |h| d*x
  double ds = 0.05;
};

double delta_finite(const LogGridFunction& h, long p);
double delta_spectral(const LogGridFunction& h, const Place& v, const SpectralConfig& cfg = {});
// x-space evaluation of the archimedean term (diagnostic second path)
double delta_inf_direct(const LogGridFunction& h);
// smallest cutoff in the doubling ladder at which h^ has decayed
double spectral_cutoff(const LogGridFunction& h, const SpectralConfig& cfg = {});

struct ZeroSide {
  double value = 0.0;
  double tail_bound = 0.0;
};

// bound on sum_{gamma > T} 1/(1+gamma^2) given the exact count below T
double zero_tail_sum_bound(double T, std::size_t count_below_T);

ZeroSide zero_side(const LogGridFunction& h, const ZeroTable& zeros, double height = 100.0,
                   const SpectralConfig& cfg = {});
double pole_side(const LogGridFunction& h);

struct LocalTermReport {
  Place place;
  double direct_value = 0.0;
  double spectral_value = 0.0;
  double discrepancy = 0.0;
};

struct ExplicitFormulaReport {
  double zero_side = 0.0;
  double pole_side = 0.0;
  std::vector<LocalTermReport> local_terms;
  double local_sum = 0.0;
  double residual = 0.0;
  double truncation_height = 0.0;
  double tail_bound = 0.0;
};

ExplicitFormulaReport balance(const LogGridFunction& h, const ZeroTable& zeros,
                              const std::vector<Place>& S, double height = 100.0,
                              const SpectralConfig& cfg = {});

double weil_functional(const LogGridFunction& h, const std::vector<Place>& S,
                       const SpectralConfig& cfg = {});

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double log_center = 0.0;
  double weil = 0.0;
  double zero_side = 0.0;
  double tail_bound = 0.0;
  double agreement = 0.0;  // |weil + zero_side|
  bool agrees = false;
};

struct PositivityReport {
  int q = 2;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Place> places;
  double h1_log_half_width = 0.0;
  std::vector<TrialRecord> records;
  double min_weil = 0.0;
  double max_weil = 0.0;
  int sign_violations = 0;
  int disagreements = 0;
};

inline constexpr double weil_slack = 1e-6;

PositivityReport positivity_experiment(int q, int trials, std::uint64_t seed, const ZeroTable& zeros,
                                       std::size_t n = default_grid);

// h1 bump on log-support [-0.3, 0.3] without moment conditions, h = h1 * h1^*
LogGridFunction local_counterexample(std::size_t n = default_grid);

} // namespace zl

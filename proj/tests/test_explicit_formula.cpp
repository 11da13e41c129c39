#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zetalab/explicit_formula.hpp"

using namespace zl;

namespace {

const ZeroTable& zeros100() {
  static ZeroTable z = find_zeros(100.0);
  return z;
}

} // namespace

TEST_CASE("delta_finite") {
  LogGridFunction inner = bump(0.51, 1.99);
  for (long p : {2L, 3L, 5L}) CHECK(delta_finite(inner, p) == 0.0);
  // single shell: h(2) = 1, h(1/2) = 0, nothing else in the support
  LogGridFunction one = log_bump(std::log(2.0), 0.2);
  CHECK(std::abs(one(2.0) - 1.0) < 1e-12);
  CHECK(std::abs(delta_finite(one, 2) - std::log(2.0) / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(delta_finite(one, 2) - 0.49012) < 1e-5);
}

TEST_CASE("two-path agreement at finite places") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5; ++i) {
    LogGridFunction g = random_generator(rng(), 0.05 * i - 0.1, 1.6, 4096, 4.0);
    for (long p : {2L, 3L}) {
      double d = delta_finite(g, p), s = delta_spectral(g, Place::prime(p));
      CHECK(std::abs(d) > 1e-6);
      CHECK(std::abs(d - s) < 1e-6);
    }
  }
}

TEST_CASE("archimedean term: spectral vs direct path") {
  for (LogGridFunction h : {bump(0.6, 1.7, 8.0), local_counterexample(), bump(1.0 / 3.0, 3.0, 4.0)}) {
    double s = delta_spectral(h, Place::inf());
    double d = delta_inf_direct(h);
    CHECK(std::abs(s - d) < 1e-6);
  }
}

TEST_CASE("linearity") {
  LogGridFunction h = bump(0.6, 1.7, 8.0);
  double a = delta_spectral(h, Place::inf());
  double b = delta_spectral(h.scaled(3.5), Place::inf());
  CHECK(std::abs(b - 3.5 * a) < 1e-12 * std::abs(b));
  double w = weil_functional(local_counterexample(), {Place::inf()});
  double w2 = weil_functional(local_counterexample().scaled(0.25), {Place::inf()});
  CHECK(std::abs(w2 - 0.25 * w) < 1e-12);
}

TEST_CASE("decay cutoff error") {
  SpectralConfig cfg;
  cfg.max_cutoff = 80.0;
  LogGridFunction slow = bump(0.6, 1.7, 1.0);
  CHECK_THROWS_AS(delta_spectral(slow, Place::inf(), cfg), Error);
  CHECK(spectral_cutoff(slow) > 80.0);
}

TEST_CASE("pole side") {
  LogGridFunction h = bump(0.6, 1.7, 2.0);
  double la = std::log(0.6), lb = std::log(1.7), c = 0.5 * (la + lb), w = 0.5 * (lb - la);
  double ref = 0.0;
  const int n = 200000;
  for (int k = 1; k < n; ++k) {
    double u = la + (lb - la) * k / n;
    ref += smooth_bump((u - c) / w, 2.0) * 2.0 * std::cosh(0.5 * u);
  }
  ref *= (lb - la) / n;
  CHECK(std::abs(pole_side(h) - ref) < 1e-8);
  LogGridFunction sym = bump(0.5, 2.0);
  CHECK(std::abs(moment(sym, 0.5) - moment(sym, -0.5)) < 1e-12);
  WeilTestPair pair = make_weil_pair(random_generator(3, 0.0, 0.3));
  CHECK(std::abs(pole_side(pair.h)) < 1e-10);
}

TEST_CASE("zero side") {
  WeilTestPair pair = make_weil_pair(random_generator(21, 0.1, 0.3));
  ZeroSide z = zero_side(pair.h, zeros100());
  CHECK(z.value >= 0.0);
  for (double g : zeros100().ordinates) CHECK(mellin_critical(pair.h, g).real() >= -1e-14);
  CHECK(z.tail_bound >= 0.0);
  ZeroTable z50 = find_zeros(50.0);
  ZeroSide half = zero_side(pair.h, z50, 50.0);
  CHECK(std::abs(half.value - z.value) <= half.tail_bound);
  CHECK_THROWS_AS(zero_side(pair.h, z50, 100.0), Error);
  CHECK(zero_tail_sum_bound(100.0, 29) > 0.0);
  // gausslog pair: sum of 2 exp(-g^2/4) sqrt(pi) over 29 zeros
  LogGridFunction g = gausslog(1.0, 1.0);
  double ref = 0.0;
  for (double t : zeros100().ordinates) ref += 2.0 * std::sqrt(pi) * std::exp(-t * t / 4.0);
  CHECK(std::abs(zero_side(g, zeros100()).value - ref) < 1e-8);
}

TEST_CASE("balance: archimedean only") {
  LogGridFunction h = bump(0.6, 1.7, 8.0);
  ExplicitFormulaReport r = balance(h, zeros100(), {Place::inf()});
  CHECK(r.residual < 1e-3);
  CHECK(r.residual <= r.tail_bound + 1e-4);
  REQUIRE(r.local_terms.size() == 1);
  CHECK(r.local_terms[0].discrepancy < 1e-6);
  CHECK_THROWS_AS(balance(bump(1.0 / 3.0, 3.0, 4.0), zeros100(), {Place::inf()}), Error);
}

TEST_CASE("balance: finite places active") {
  LogGridFunction h = bump(1.0 / 3.0, 3.0, 4.0);
  ExplicitFormulaReport r = balance(h, zeros100(), {Place::inf(), Place::prime(2), Place::prime(3)});
  CHECK(r.residual < 1e-3);
  for (const auto& t : r.local_terms) CHECK(t.discrepancy < 1e-6);
  CHECK(std::abs(r.local_terms[1].direct_value) > 1e-3);
}

TEST_CASE("weil functional") {
  // q = 3, S = {inf, 2}: support inside (3^-1/2, 3^1/2)
  double w = 0.95 * std::log(3.0) / 4.0;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    WeilTestPair pair = make_weil_pair(random_generator(seed, 0.2, w));
    CHECK(pair.h.b() < std::sqrt(3.0));
    double W = weil_functional(pair.h, {Place::inf(), Place::prime(2)});
    ZeroSide z = zero_side(pair.h, zeros100());
    CHECK(W <= weil_slack);
    CHECK(std::abs(W + z.value) <= z.tail_bound + weil_slack);
  }
  double f4 = weil_functional(local_counterexample(), {Place::inf()});
  CHECK(f4 > 0.1);
}

TEST_CASE("positivity experiment") {
  PositivityReport e = positivity_experiment(3, 0, 1, zeros100());
  CHECK(e.records.empty());
  PositivityReport r = positivity_experiment(5, 3, 11, zeros100(), 2048);
  CHECK(r.places.size() == 3);
  CHECK(r.sign_violations == 0);
  CHECK(r.disagreements == 0);
  PositivityReport r2 = positivity_experiment(5, 3, 11, zeros100(), 2048);
  for (int i = 0; i < 3; ++i) CHECK(r.records[i].weil == r2.records[i].weil);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "zetalab/specfun.hpp"

using namespace zl;
using doctest::Approx;

TEST_CASE("log_gamma values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-14);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) < 1e-14);
  cplx v = log_gamma(cplx(0.25, 3.0));
  CHECK(std::abs(v - cplx(fx::loggamma_q3_re, fx::loggamma_q3_im)) < 1e-13);
  v = log_gamma(cplx(-2.5, 0.1));
  CHECK(std::abs(v - cplx(fx::loggamma_m25_re, fx::loggamma_m25_im)) < 1e-12);
  v = log_gamma(cplx(10.0, 20.0));
  CHECK(std::abs(v - cplx(fx::loggamma_big_re, fx::loggamma_big_im)) < 1e-12);
  CHECK_THROWS_AS(log_gamma(-3.0), Error);
  CHECK_THROWS_AS(log_gamma(0.0), Error);
}

TEST_CASE("log_gamma recurrence on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-14.0, 14.0);
  int tested = 0;
  while (tested < 200) {
    cplx z(d(rng), d(rng));
    if (std::abs(z) > 20.0 || std::abs(z.imag()) < 0.05) continue;
    cplx ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z)) / z;
    CHECK(std::abs(ratio - 1.0) < 1e-12);
    ++tested;
  }
}

TEST_CASE("log_gamma branch is continuous") {
  cplx prev = log_gamma(cplx(-4.7, 1.0));
  for (int k = 1; k <= 2000; ++k) {
    double t = 1.0 - 2.0 * k / 2000.0 * 0.49;  // stays above the axis
    cplx z(-4.7 + 9.0 * k / 2000.0, t);
    cplx cur = log_gamma(z);
    CHECK(std::abs(cur - prev) < 0.05);
    prev = cur;
  }
}

TEST_CASE("digamma") {
  CHECK(std::abs(digamma(1.0) + euler_gamma) < 1e-14);
  CHECK(std::abs(digamma(0.25) - fx::digamma_q) < 1e-13);
  CHECK(std::abs(digamma(cplx(2.0, -3.0)) - cplx(fx::digamma_2m3_re, fx::digamma_2m3_im)) < 1e-13);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-8.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    cplx z(d(rng), d(rng));
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12);
  }
  CHECK_THROWS_AS(digamma(-2.0), Error);
}

TEST_CASE("zeta_em") {
  CHECK(std::abs(zeta_em(2.0) - pi * pi / 6.0) < 1e-14);
  CHECK(std::abs(zeta_em(0.5) - fx::zeta_half) < 1e-13);
  CHECK(std::abs(zeta_em(cplx(0.5, 10.0)) - cplx(fx::zeta_h10_re, fx::zeta_h10_im)) < 1e-12);
  cplx z3(fx::zeta_p3_re, fx::zeta_p3_im);
  CHECK(std::abs(zeta_em(cplx(0.3, 50.0)) - z3) / std::abs(z3) < 1e-10);
  cplx zm(fx::zeta_m3_re, fx::zeta_m3_im);
  CHECK(std::abs(zeta_em(cplx(-3.0, 2.0)) - zm) / std::abs(zm) < 1e-10);
  CHECK(std::abs(zeta_em(0.0) + 0.5) < 1e-15);
  CHECK(std::abs(zeta_em(-2.0)) == 0.0);
  cplx s(0.5, 10.0);
  CHECK(std::abs(zeta_em(s) - zeta_chi(s) * zeta_em(1.0 - s)) < 1e-8);
  CHECK_THROWS_AS(zeta_em(1.0), Error);
  CHECK_THROWS_AS(zeta_em(cplx(0.5, 130.0)), Error);
}

TEST_CASE("theta and theta_prime") {
  CHECK(theta_rs(0.0) == 0.0);
  for (double t : {0.3, 2.0, 7.5, 33.0}) CHECK(theta_rs(-t) == Approx(-theta_rs(t)).epsilon(1e-14));
  CHECK(std::abs(theta_rs(10.0) - fx::theta_10) < 1e-12);
  CHECK(std::abs(theta_rs(100.0) - fx::theta_100) < 1e-11);
  // bisection for the unique zero of theta'
  double a = 6.2, b = 6.4;
  REQUIRE(theta_prime(a) < 0.0);
  REQUIRE(theta_prime(b) > 0.0);
  while (b - a > 1e-13) {
    double c = 0.5 * (a + b);
    (theta_prime(c) < 0.0 ? a : b) = c;
  }
  CHECK(std::abs(a - fx::theta_prime_root) < 1e-10);
  CHECK(std::abs(theta_rs(a) - fx::theta_at_root) < 1e-10);
  int changes = 0;
  for (int k = 0; k < 5000; ++k)
    if ((theta_prime(k * 0.01) < 0) != (theta_prime((k + 1) * 0.01) < 0)) ++changes;
  CHECK(changes == 1);
  CHECK(theta_rs(1.0) > theta_rs(6.0));
  CHECK(theta_rs(6.0) < theta_rs(20.0));
  // derivative consistency
  for (double t : {1.0, 6.0, 25.0, 90.0}) {
    double fd = (theta_rs(t + 1e-5) - theta_rs(t - 1e-5)) / 2e-5;
    CHECK(std::abs(fd - theta_prime(t)) < 1e-8);
  }
}

TEST_CASE("phi and u_inf") {
  CHECK(std::abs(phi(20.0).real() - fx::phi20) < 1e-10);
  CHECK(std::abs(phi(20.0).real() - 26.4562) < 5e-5);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(phi(2.0 * k + 1.0)) < 1e-10);
  CHECK_THROWS_AS(phi(-2.0), Error);
  double worst_mod = 0.0, worst_exp = 0.0;
  for (int k = 0; k < 1000; ++k) {
    double s = -100.0 + 0.2 * k;
    cplx u = u_inf(s);
    worst_mod = std::max(worst_mod, std::abs(std::abs(u) - 1.0));
    worst_exp = std::max(worst_exp, std::abs(u - std::exp(cplx(0, 2.0 * theta_rs(s)))));
  }
  CHECK(worst_mod < 1e-12);
  CHECK(worst_exp < 1e-10);
}

TEST_CASE("u_p") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CHECK(std::abs(u_p(0.0, p) - 1.0) < 1e-15);
    double period = 2.0 * pi / std::log(static_cast<double>(p));
    for (int k = 0; k < 500; ++k) {
      double s = -50.0 + 0.2 * k;
      CHECK(std::abs(std::abs(u_p(s, p)) - 1.0) < 1e-14);
      CHECK(std::abs(u_p(s + period, p) - u_p(s, p)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(Place::prime(4), Error);
}

TEST_CASE("dlog_u") {
  for (double s : {-7.0, 0.3, 6.0, 33.3}) {
    CHECK(std::abs(dlog_u(s, Place::inf()) - cplx(0, 2.0 * theta_prime(s))) < 1e-10);
    for (Place v : {Place::inf(), Place::prime(2), Place::prime(3)}) {
      cplx d = dlog_u(s, v);
      CHECK(std::abs(d.real()) < 1e-14);
      double e = 1e-5;
      cplx fd = std::log(u_place(s + e, v) / u_place(s - e, v)) / (2.0 * e);
      CHECK(std::abs(fd - d) < 1e-6);
    }
  }
}

TEST_CASE("find_zeros") {
  ZeroTable z = find_zeros(100.0);
  REQUIRE(z.ordinates.size() == 29);
  CHECK(std::abs(z.ordinates[0] - fx::zero1) < 1e-8);
  CHECK(std::abs(z.ordinates[1] - fx::zero2) < 1e-8);
  CHECK(std::abs(z.ordinates[2] - fx::zero3) < 1e-8);
  CHECK(z.count_below(50.0) == 10);
  for (double g : z.ordinates) {
    CHECK(std::abs(hardy_z(g)) < 1e-7);
    CHECK((hardy_z(g - 1e-8) < 0) != (hardy_z(g + 1e-8) < 0));
  }
  CHECK(std::lround(theta_count_estimate(100.0)) == 29);
  z.validate();
}

TEST_CASE("zero table io") {
  ZeroTable z;
  z.ordinates = {14.134725142, 21.022039639};
  z.complete_to = 22.0;
  std::ostringstream os;
  write_zero_table(z, os);
  CHECK(os.str().rfind("# zeros complete_to=22 precision=9", 0) == 0);
  std::istringstream is(os.str());
  ZeroTable r = read_zero_table(is);
  CHECK(r.ordinates.size() == 2);
  CHECK(r.complete_to == 22.0);
  CHECK(std::abs(r.ordinates[1] - 21.022039639) < 1e-12);

  std::istringstream bad("# zeros complete_to=30 precision=9\n14.1\n25.0\n21.0\n");
  try {
    read_zero_table(bad);
    FAIL("expected monotonicity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::monotonicity);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  std::istringstream junk("14.1\nabc\n");
  CHECK_THROWS_AS(read_zero_table(junk), Error);
  std::istringstream empty("");
  ZeroTable e = read_zero_table(empty);
  CHECK(e.ordinates.empty());
  CHECK(e.complete_to == 0.0);
}

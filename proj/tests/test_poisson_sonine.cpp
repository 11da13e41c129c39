#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "zetalab/poisson_sonine.hpp"
#include "zetalab/specfun.hpp"

using namespace zl;

namespace {

double gauss(double x) { return std::exp(-pi * x * x); }

// D(exp(-pi x^2)) in closed form
double d_gauss(double x) {
  const double a = pi * x * x;
  return (4.0 * a * a - 6.0 * a) * std::exp(-a);
}

const std::vector<EvenSampledFunction>& family() {
  static const auto fam = kahane_family();
  return fam;
}

} // namespace

TEST_CASE("sampled even functions") {
  auto f = EvenSampledFunction::from_function(gauss, 40.0, 8193);
  CHECK(f.node(f.center()) == 0.0);
  CHECK(f(0.3137) == doctest::Approx(gauss(0.3137)).epsilon(1e-12));
  CHECK(f(-1.7) == doctest::Approx(gauss(1.7)).epsilon(1e-10));
  CHECK(f(41.0) == 0.0);
  CHECK(integral(f) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(fourier_at(f, 0.8) - gauss(0.8)) < 1e-13);
  CHECK_NOTHROW(validate_decay(f));
  auto wide = EvenSampledFunction::from_function([](double x) { return std::exp(-x * x / 400.0); }, 40.0, 8193);
  CHECK_THROWS_AS(validate_decay(wide), Error);
  CHECK_THROWS_AS(EvenSampledFunction::from_function(gauss, 40.0, 8192), Error);
}

TEST_CASE("kahane operator") {
  auto f = EvenSampledFunction::from_function(gauss, 40.0, 8193);
  auto g = kahane_D(f);
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, std::abs(g.samples[k] - d_gauss(g.node(k))));
  CHECK(err < 1e-6);
  for (const auto& h : family()) {
    CHECK(two_conditions(h).hold(1e-12));
    for (std::size_t k = 0; k < h.size(); ++k) REQUIRE(h.samples[k] == h.samples[h.size() - 1 - k]);
    // Fourier image satisfies the same two conditions
    auto Fh = fourier_transform(h);
    CHECK(two_conditions(Fh).hold(1e-9));
  }
  // D0 f = x f'' is odd and integrates to zero
  auto d0 = kahane_D0(f);
  double s = 0.0;
  for (double v : d0) s += v;
  CHECK(std::abs(s * f.step()) < 1e-12);
  CHECK(d0[f.center() + 100] == doctest::Approx(-d0[f.center() - 100]));
}

TEST_CASE("map E") {
  const auto& h = family()[0];
  // oracle: direct sum of the closed form
  const double x = 0.3;
  double ref = 0.0;
  for (int m = 1; m <= 10000; ++m) ref += d_gauss(m * x);
  ref *= std::sqrt(x);
  CHECK(std::abs(map_E(h, x) - ref) < 1e-10);
  CHECK(map_E(h, -x) == map_E(h, x));
  CHECK_THROWS_AS(map_E(h, 0.0), Error);

  auto f = EvenSampledFunction::from_function(gauss, 40.0, 8193);
  try {
    map_E(f, 0.5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::condition_violation);
  }
}

TEST_CASE("poisson identity") {
  for (const auto& h : family()) {
    CHECK(poisson_identity_check(h) < 1e-8);
  }
  CHECK(poisson_identity_check(family()[0], false) > 1e-3);
}

TEST_CASE("zeta multiplier") {
  for (const auto& h : family()) {
    auto r = zeta_multiplier_check(h, {1.0, 5.0, 10.0});
    CHECK(r.rel_error.size() == 3);
    CHECK(r.max_rel_error < 1e-6);
  }
}

TEST_CASE("u ratio") {
  CHECK(u_ratio_check(family()[0], {1.0, 5.0, 10.0}) < 1e-6);
  CHECK(u_ratio_check(family()[2], {2.0, 7.0}) < 1e-6);
}

TEST_CASE("monoid sums") {
  const std::vector<double> s = {1.0, 5.0, 10.0};
  CHECK(monoid_sum_check({}, s) < 1e-4);
  CHECK(monoid_sum_check({2}, s) < 1e-4);
  CHECK(monoid_sum_check({2, 3}, s) < 1e-4);
  CHECK(std::abs(monoid_closed_form({}, 3.0) - zeta_em(cplx(0.5, -3.0))) < 1e-14);
  CHECK_THROWS_AS(monoid_sum({4}, 1.0), Error);
}

TEST_CASE("sonine bump") {
  SonineBump phi(0.2);
  CHECK(phi.value(0.2) == 0.0);
  CHECK(phi.hat(0.0) == doctest::Approx(1.0).epsilon(1e-10));
  const double x = 0.07, e = 1e-5;
  CHECK(phi.d1(x) == doctest::Approx((phi.value(x + e) - phi.value(x - e)) / (2 * e)).epsilon(1e-6));
  CHECK(phi.d2(x) == doctest::Approx((phi.d1(x + e) - phi.d1(x - e)) / (2 * e)).epsilon(1e-6));
  CHECK_THROWS_AS(SonineBump(0.6), Error);
  CHECK_THROWS_AS(SonineBump(0.0), Error);

  // weak pairing: int (D Pi * phi) psi = sum_n n^2 k''(n) + 2n k'(n),
  // k(t) = int phi(y) psi(t + y) dy
  auto psi = [](double t) { return std::exp(-0.5 * t * t); };
  auto psi1 = [](double t) { return -t * std::exp(-0.5 * t * t); };
  auto psi2 = [](double t) { return (t * t - 1.0) * std::exp(-0.5 * t * t); };
  auto smooth = [&](auto&& g, double t) {
    const int m = 2000;
    const double h = 2 * phi.delta / m;
    double acc = 0.0;
    for (int k = 1; k < m; ++k) {
      double y = -phi.delta + k * h;
      acc += phi.value(y) * g(t + y);
    }
    return acc * h;
  };
  double rhs = 0.0;
  for (int n = -12; n <= 12; ++n) {
    if (n == 0) continue;
    rhs += n * n * smooth(psi2, n) + 2.0 * n * smooth(psi1, n);
  }
  double lhs = 0.0;
  const double h = 1e-4;
  for (double t = -13.0; t <= 13.0; t += h) lhs += kahane_pi_conv(phi, t) * psi(t);
  lhs *= h;
  CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs) + 1e-10);
}

TEST_CASE("sonine construction") {
  auto r = sonine_construct(0.2);
  CHECK(r.boundary < 1e-5);
  for (std::size_t k = 0; k < r.f.size(); ++k) REQUIRE(r.f.samples[k] == r.f.samples[r.f.size() - 1 - k]);
  CHECK(r.position_radius > 0.75);
  CHECK(r.fourier_radius > 0.75);
  CHECK(std::abs(r.f.samples[r.f.center()]) < 1e-12);
  CHECK_THROWS_AS(sonine_construct(0.2, 257, 80.0), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "zetalab/mult_testfn.hpp"

using namespace zl;

namespace {

double sup_diff(const LogGridFunction& f, const LogGridFunction& g) {
  double m = 0.0;
  double lo = std::min(f.log_a, g.log_a), hi = std::max(f.log_b, g.log_b);
  for (int k = 0; k <= 4000; ++k) {
    double u = lo + (hi - lo) * k / 4000.0;
    m = std::max(m, std::abs(f.at_log(u) - g.at_log(u)));
  }
  return m;
}

// reference trapezoid on an analytic integrand
template <class F>
cplx trap(F f, double lo, double hi, int n) {
  double h = (hi - lo) / n;
  cplx s = 0.5 * (f(lo) + f(hi));
  for (int k = 1; k < n; ++k) s += f(lo + h * k);
  return s * h;
}

} // namespace

TEST_CASE("grid function basics") {
  LogGridFunction b = bump(0.5, 2.0);
  CHECK(b.values.front() == 0.0);
  CHECK(b.values.back() == 0.0);
  CHECK(std::abs(b(1.0) - 1.0) < 1e-12);
  CHECK(b(0.4) == 0.0);
  CHECK(b(2.5) == 0.0);
  // cubic rule reproduces the analytic bump between nodes
  for (double x : {0.7, 0.93, 1.31, 1.77})
    CHECK(std::abs(b(x) - smooth_bump(std::log(x) / std::log(2.0), 1.0)) < 1e-10);
  LogGridFunction q = parse_testfn("bump:center=1,width=0.2");
  CHECK(std::abs(q.log_a + 0.2) < 1e-15);
  CHECK(std::abs(q.log_b - 0.2) < 1e-15);
  CHECK(parse_testfn("bump:a=0.6,b=1.7,k=8").size() == default_grid);
  CHECK_THROWS_AS(parse_testfn("bump:a=0.6"), Error);
  CHECK_THROWS_AS(parse_testfn("bump:a=0.6,b=1.7,zz=3"), Error);
  CHECK_THROWS_AS(parse_testfn("wave:a=1"), Error);
  CHECK_THROWS_AS(bump(2.0, 1.0), Error);
}

TEST_CASE("mconvolve") {
  LogGridFunction h1 = bump(0.5, 1.0), h2 = bump(1.0, 2.0);
  LogGridFunction c = mconvolve(h1, h2);
  CHECK(c.log_a == h1.log_a + h2.log_a);
  CHECK(c.log_b == h1.log_b + h2.log_b);
  CHECK(std::abs(c.a() - 0.5) < 1e-15);
  CHECK(std::abs(c.b() - 2.0) < 1e-15);
  CHECK(c.size() == h1.size() + h2.size() - 1);

  // approximate identity
  LogGridFunction wide = bump(0.6, 1.7);
  double prev = 1e9;
  for (double w : {0.04, 0.02, 0.01}) {
    LogGridFunction d = log_bump(0.0, w, 1.0, 801).scaled(1.0 / integral_dstar(log_bump(0.0, w, 1.0, 801)));
    double e = sup_diff(mconvolve(wide, d), wide);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-3);

  // brute-force quadrature oracle with analytic integrands
  LogGridFunction f1 = bump(0.6, 1.7), f2 = bump(0.8, 1.5, 2.0);
  LogGridFunction fc = mconvolve(f1, f2);
  double c1 = 0.5 * (std::log(0.6) + std::log(1.7)), w1 = 0.5 * (std::log(1.7) - std::log(0.6));
  double c2 = 0.5 * (std::log(0.8) + std::log(1.5)), w2 = 0.5 * (std::log(1.5) - std::log(0.8));
  for (double x : {0.55, 0.8, 1.0, 1.6, 2.2}) {
    double lx = std::log(x);
    cplx ref = trap([&](double v) { return cplx(smooth_bump((lx - v - c1) / w1, 1.0) * smooth_bump((v - c2) / w2, 2.0)); },
                    c2 - w2, c2 + w2, 200000);
    CHECK(std::abs(fc(x) - ref) < 1e-8);
  }
}

TEST_CASE("mconvolve associativity and commutativity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    LogGridFunction a = random_generator(rng(), 0.1, 0.3, 1024);
    LogGridFunction b = random_generator(rng(), -0.2, 0.3, 1024);
    LogGridFunction c = random_generator(rng(), 0.0, 0.3, 1024);
    LogGridFunction ab = mconvolve(a, b), ba = mconvolve(b, a);
    CHECK(sup_diff(ab, ba) < 1e-12);
    CHECK(sup_diff(mconvolve(ab, c), mconvolve(a, mconvolve(b, c))) < 1e-12);
  }
}

TEST_CASE("adjoint") {
  LogGridFunction h = random_generator(3, 0.2, 0.4, 512).scaled(cplx(1.0, 0.5));
  LogGridFunction hh = adjoint(adjoint(h));
  CHECK(hh.log_a == h.log_a);
  CHECK(hh.log_b == h.log_b);
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(hh.values[k] == h.values[k]);
  LogGridFunction e = bump(0.5, 2.0);
  CHECK(sup_diff(adjoint(e), e) < 1e-14);
  LogGridFunction ac = mconvolve(h, adjoint(h));
  cplx ref = 0.0;
  for (const auto& v : h.values) ref += std::norm(v);
  ref *= h.du();
  CHECK(std::abs(ac(1.0) - ref) < 1e-12);
  CHECK(ac(1.0).real() > 0.0);
  for (double s : {-3.0, 0.5, 7.0}) {
    CHECK(std::abs(mellin_critical(adjoint(h), s) - std::conj(mellin_critical(h, s))) < 1e-12);
  }
}

TEST_CASE("mellin_critical") {
  LogGridFunction h = bump(0.6, 1.7);
  CHECK(std::abs(mellin_critical(h, 0.0) - integral_dstar(h)) < 1e-14);
  LogGridFunction g = gausslog(1.0, 1.0);
  for (double s : {0.0, 0.7, 2.0, 5.0, 11.0})
    CHECK(std::abs(mellin_critical(g, s) - std::sqrt(pi) * std::exp(-s * s / 4.0)) < 1e-8);
  // analytic continuation
  CHECK(std::abs(mellin_critical(h, cplx(0.0, 0.5)) - moment(h, 0.5)) < 1e-13);
  LogGridFunction h2 = bump(0.8, 1.3, 3.0);
  LogGridFunction c = mconvolve(h, h2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-30.0, 30.0);
  for (int i = 0; i < 10; ++i) {
    double s = d(rng);
    CHECK(std::abs(mellin_critical(c, s) - mellin_critical(h, s) * mellin_critical(h2, s)) < 1e-8);
  }
  std::vector<double> ss = {0.0, 1.0, 2.0};
  auto v = mellin_critical(h, ss);
  CHECK(std::abs(v[1] - mellin_critical(h, 1.0)) < 1e-14);
}

TEST_CASE("make_weil_pair") {
  LogGridFunction g = random_generator(42, 0.1, 0.35);
  WeilTestPair w = make_weil_pair(g);
  CHECK(std::abs(moment(w.h1, 0.5)) < 1e-10);
  CHECK(std::abs(moment(w.h1, -0.5)) < 1e-10);
  CHECK(std::abs(integral_dx(w.g)) < 1e-10);
  CHECK(std::abs(integral_dstar(w.g)) < 1e-10);
  // hermitian symmetry and positivity of the transform
  for (double x : {0.6, 0.9, 1.3}) CHECK(std::abs(w.h(1.0 / x) - std::conj(w.h(x))) < 1e-10);
  for (int k = 0; k <= 200; ++k) {
    double s = -50.0 + 0.5 * k;
    cplx v = mellin_critical(w.h, s);
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(v.real() >= -1e-12);
    CHECK(std::abs(v - std::norm(mellin_critical(w.h1, s))) < 1e-10);
  }
  // h(x) = x^(1/2) int g(xy) conj(g(y)) dy
  for (double x : {0.7, 1.0, 1.25}) {
    double lx = std::log(x);
    cplx f = 0.0;
    for (std::size_t k = 0; k < w.g.size(); ++k) {
      double u = w.g.log_node(k);
      f += w.g.at_log(lx + u) * std::conj(w.g.values[k]) * std::exp(u);
    }
    f *= w.g.du();
    CHECK(std::abs(w.h(x) - std::sqrt(x) * f) < 1e-8);
  }
  CHECK_THROWS_AS(make_weil_pair(log_bump(0.0, 0.01, 1.0, 64)), Error);
}

TEST_CASE("relevant_places") {
  auto names = [](const std::vector<Place>& v) {
    std::vector<long> out;
    for (const auto& p : v) out.push_back(p.is_inf() ? 0 : p.p);
    return out;
  };
  CHECK(names(relevant_places(bump(0.51, 1.99), false)).empty());
  CHECK(names(relevant_places(bump(0.51, 1.99), true)) == std::vector<long>{0});
  CHECK(names(relevant_places(bump(1.0 / 3.0, 3.0), false)) == std::vector<long>{2, 3});
  CHECK(names(relevant_places(bump(0.1, 10.0), false)) == std::vector<long>{2, 3, 5, 7});
}

TEST_CASE("csv round trip") {
  LogGridFunction h = random_generator(9, 0.0, 0.3, 128).scaled(cplx(0.3, -1.0));
  std::stringstream ss;
  write_csv(h, ss);
  LogGridFunction r = read_csv(ss);
  CHECK(r.size() == h.size());
  CHECK(std::abs(r.log_a - h.log_a) < 1e-15);
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(std::abs(r.values[k] - h.values[k]) < 1e-15);
  std::stringstream bad("log_x,re,im\n0,1\n");
  CHECK_THROWS_AS(read_csv(bad), Error);
}

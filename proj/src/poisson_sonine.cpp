#include "zetalab/poisson_sonine.hpp"

#include <cmath>

#include "zetalab/kernels.hpp"
#include "zetalab/specfun.hpp"

namespace zl {

namespace {

constexpr int lagrange_points = 12;

double trapezoid(const std::vector<double>& v, double h) {
  // end samples are negligible by the decay invariant; plain sum
  return kernels::pairwise_sum(v.data(), v.size()) * h;
}

} // namespace

double EvenSampledFunction::operator()(double x) const {
  const double a = std::abs(x);
  if (a > x_max) return 0.0;
  const double h = step();
  const double pos = (a + x_max) / h;
  const long n = static_cast<long>(samples.size());
  long k0 = static_cast<long>(std::floor(pos)) - lagrange_points / 2 + 1;
  const double t = pos - static_cast<double>(k0);
  const long ti = static_cast<long>(std::lround(t));
  if (std::abs(t - static_cast<double>(ti)) < 1e-13 && k0 + ti < n) return samples[k0 + ti];
  double acc = 0.0;
  for (int j = 0; j < lagrange_points; ++j) {
    const long k = k0 + j;
    if (k >= n) break;
    double w = 1.0;
    for (int m = 0; m < lagrange_points; ++m)
      if (m != j) w *= (t - m) / static_cast<double>(j - m);
    acc += w * samples[k];
  }
  return acc;
}

double EvenSampledFunction::boundary() const {
  return std::max(std::abs(samples.front()), std::abs(samples.back()));
}

EvenSampledFunction EvenSampledFunction::from_function(const std::function<double(double)>& f, double x_max,
                                                       std::size_t n) {
  if (n < 65 || n % 2 == 0) throw Error(ErrorKind::precondition, "sampled grid needs odd n >= 65");
  if (!(x_max > 0.0)) throw Error(ErrorKind::precondition, "sampled grid needs x_max > 0");
  EvenSampledFunction g;
  g.x_max = x_max;
  g.samples.resize(n);
  const std::size_t c = (n - 1) / 2;
  for (std::size_t k = c; k < n; ++k) {
    g.samples[k] = f(g.node(k));
    g.samples[n - 1 - k] = g.samples[k];
  }
  return g;
}

void validate_decay(const EvenSampledFunction& f, double tol) {
  if (f.boundary() >= tol)
    throw Error(ErrorKind::decay_cutoff, "sampled function has not decayed at x_max: " + std::to_string(f.boundary()));
}

double integral(const EvenSampledFunction& f) { return trapezoid(f.samples, f.step()); }

double fourier_at(const EvenSampledFunction& f, double y) {
  const std::size_t c = f.center(), n = f.size();
  std::vector<double> terms(n - c);
  terms[0] = f.samples[c];
  for (std::size_t k = c + 1; k < n; ++k) terms[k - c] = 2.0 * f.samples[k] * std::cos(2.0 * pi * f.node(k) * y);
  return kernels::pairwise_sum(terms.data(), terms.size()) * f.step();
}

EvenSampledFunction fourier_transform(const EvenSampledFunction& f) {
  EvenSampledFunction g;
  g.x_max = f.x_max;
  const std::size_t n = f.size(), c = f.center();
  g.samples.resize(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t k = c; k < n; ++k) g.samples[k] = fourier_at(f, g.node(k));
  for (std::size_t k = c; k < n; ++k) g.samples[n - 1 - k] = g.samples[k];
  return g;
}

std::vector<double> derivative1(const EvenSampledFunction& f) {
  const std::size_t n = f.size();
  const double h = f.step();
  auto at = [&](long k) { return (k < 0 || k >= static_cast<long>(n)) ? 0.0 : f.samples[k]; };
  std::vector<double> d(n);
  for (long k = 0; k < static_cast<long>(n); ++k)
    d[k] = (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / (12.0 * h);
  return d;
}

std::vector<double> derivative2(const EvenSampledFunction& f) {
  const std::size_t n = f.size();
  const double h = f.step();
  auto at = [&](long k) { return (k < 0 || k >= static_cast<long>(n)) ? 0.0 : f.samples[k]; };
  std::vector<double> d(n);
  for (long k = 0; k < static_cast<long>(n); ++k)
    d[k] = (-at(k + 2) + 16.0 * at(k + 1) - 30.0 * at(k) + 16.0 * at(k - 1) - at(k - 2)) / (12.0 * h * h);
  return d;
}

EvenSampledFunction kahane_D(const EvenSampledFunction& f) {
  auto d1 = derivative1(f);
  auto d2 = derivative2(f);
  EvenSampledFunction g = f;
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double x = f.node(k);
    g.samples[k] = x * x * d2[k] + 2.0 * x * d1[k];
  }
  // exact symmetry and the node at 0
  for (std::size_t k = f.center(); k < n; ++k) g.samples[n - 1 - k] = g.samples[k];
  g.samples[f.center()] = 0.0;
  return g;
}

std::vector<double> kahane_D0(const EvenSampledFunction& f) {
  auto d2 = derivative2(f);
  for (std::size_t k = 0; k < f.size(); ++k) d2[k] *= f.node(k);
  return d2;
}

bool TwoConditions::hold(double tol) const { return std::abs(value_at_0) <= tol && std::abs(integral) <= tol; }

TwoConditions two_conditions(const EvenSampledFunction& f) {
  return {f.samples[f.center()], integral(f)};
}

double map_E(const EvenSampledFunction& f, double x, bool weighted) {
  if (!two_conditions(f).hold())
    throw Error(ErrorKind::condition_violation, "map E needs f(0) = f^(0) = 0");
  const double a = std::abs(x);
  if (a == 0.0) throw Error(ErrorKind::domain, "map E is evaluated at x != 0");
  std::vector<double> terms;
  for (long m = 1; m * a <= f.x_max; ++m) terms.push_back(f(m * a));
  const double sum = kernels::pairwise_sum(terms.data(), terms.size());
  return weighted ? std::sqrt(a) * sum : sum;
}

double poisson_identity_check(const EvenSampledFunction& f, bool weighted, std::size_t points) {
  EvenSampledFunction Ff = fourier_transform(f);
  double defect = 0.0;
  const double lo = std::log(1.0 / 8.0), hi = std::log(8.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    defect = std::max(defect, std::abs(map_E(Ff, x, weighted) - map_E(f, 1.0 / x, weighted)));
  }
  return defect;
}

cplx mellin_half(const EvenSampledFunction& f, double s) {
  const double u0 = -30.0, u1 = std::log(f.x_max), du = 0.004;
  const std::size_t nu = static_cast<std::size_t>(std::ceil((u1 - u0) / du)) + 1;
  const double step = (u1 - u0) / static_cast<double>(nu - 1);
  std::vector<cplx> H(nu);
  for (std::size_t k = 0; k < nu; ++k) {
    const double u = u0 + step * static_cast<double>(k);
    H[k] = f(std::exp(u)) * std::exp(0.5 * u);
  }
  cplx sc = s, out;
  kernels::serial::mellin(H.data(), nu, u0, step, &sc, 1, &out);
  return out;
}

cplx mellin_E(const EvenSampledFunction& f, double s) {
  const double u0 = -3.5, u1 = 3.5, du = 0.005;
  const std::size_t nu = static_cast<std::size_t>(std::lround((u1 - u0) / du)) + 1;
  std::vector<cplx> H(nu);
  for (std::size_t k = 0; k < nu; ++k) H[k] = map_E(f, std::exp(u0 + du * static_cast<double>(k)));
  cplx sc = s, out;
  kernels::serial::mellin(H.data(), nu, u0, du, &sc, 1, &out);
  return out;
}

MultiplierCheck zeta_multiplier_check(const EvenSampledFunction& f, const std::vector<double>& s_list) {
  MultiplierCheck r;
  r.s = s_list;
  for (double s : s_list) {
    const cplx lhs = mellin_E(f, s);
    const cplx rhs = zeta_em(cplx(0.5, -s)) * mellin_half(f, s);
    const double e = std::abs(lhs - rhs) / std::abs(rhs);
    r.rel_error.push_back(e);
    r.max_rel_error = std::max(r.max_rel_error, e);
  }
  return r;
}

double u_ratio_check(const EvenSampledFunction& f, const std::vector<double>& s_list) {
  EvenSampledFunction Ff = fourier_transform(f);
  double worst = 0.0;
  for (double s : s_list) {
    const cplx ratio = mellin_E(f, s) / mellin_E(Ff, s) * (mellin_half(f, -s) / mellin_half(f, s));
    worst = std::max(worst, std::abs(ratio - u_inf(s)));
  }
  return worst;
}

std::vector<EvenSampledFunction> kahane_family(double x_max, std::size_t n) {
  std::vector<EvenSampledFunction> fam;
  fam.push_back(kahane_D(EvenSampledFunction::from_function([](double x) { return std::exp(-pi * x * x); }, x_max, n)));
  fam.push_back(kahane_D(EvenSampledFunction::from_function(
      [](double x) { return std::exp(-pi * x * x) * std::cos(3.0 * x); }, x_max, n)));
  fam.push_back(
      kahane_D(EvenSampledFunction::from_function([](double x) { return std::exp(-0.5 * x * x); }, x_max, n)));
  return fam;
}

cplx monoid_sum(const std::vector<long>& S, double s) {
  for (long p : S)
    if (!is_prime(p)) throw Error(ErrorKind::domain, "monoid sum needs primes");
  const cplx z(0.5, -s);
  double cS = 1.0;
  for (long p : S) cS *= 1.0 - 1.0 / static_cast<double>(p);
  const cplx g = std::exp(log_gamma(1.0 - z));
  constexpr int levels = 7;
  const double eps0 = 0.02;
  std::vector<cplx> T(levels);
  for (int k = 0; k < levels; ++k) {
    const double eps = eps0 / std::pow(2.0, k);
    const long M = static_cast<long>(std::ceil(40.0 / eps));
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(M));
    for (long m = 1; m <= M; ++m) {
      bool coprime = true;
      for (long p : S)
        if (m % p == 0) coprime = false;
      if (!coprime) continue;
      const double lm = std::log(static_cast<double>(m));
      terms.push_back(std::exp(-z * lm - eps * static_cast<double>(m)));
    }
    T[k] = kernels::pairwise_sum(terms.data(), terms.size()) - cS * g * std::pow(cplx(eps), z - 1.0);
  }
  // regular part is a power series in eps
  for (int j = 1; j < levels; ++j) {
    const double f = std::pow(2.0, j);
    for (int k = levels - 1; k >= j; --k) T[k] = (f * T[k] - T[k - 1]) / (f - 1.0);
  }
  return T[levels - 1];
}

cplx monoid_closed_form(const std::vector<long>& S, double s) {
  cplx v = zeta_em(cplx(0.5, -s));
  for (long p : S) v *= 1.0 - std::pow(static_cast<double>(p), cplx(-0.5, s));
  return v;
}

double monoid_sum_check(const std::vector<long>& S, const std::vector<double>& s_list) {
  double worst = 0.0;
  for (double s : s_list) {
    const cplx ref = monoid_closed_form(S, s);
    worst = std::max(worst, std::abs(monoid_sum(S, s) - ref) / std::abs(ref));
  }
  return worst;
}

SonineBump::SonineBump(double d) : delta(d), norm(1.0) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::degenerate, "sonine bump needs 0 < delta < 1/2");
  // unit integral by trapezoid (spectrally accurate for this bump)
  const int m = 4000;
  const double h = 2.0 * delta / m;
  std::vector<double> v;
  for (int k = 1; k < m; ++k) v.push_back(value(-delta + h * k));
  norm = 1.0 / (kernels::pairwise_sum(v.data(), v.size()) * h);
}

double SonineBump::value(double x) const {
  if (std::abs(x) >= delta) return 0.0;
  return norm * std::exp(1.0 / (x * x - delta * delta));
}

double SonineBump::d1(double x) const {
  if (std::abs(x) >= delta) return 0.0;
  const double g = 1.0 / (x * x - delta * delta);
  return value(x) * (-2.0 * x * g * g);
}

double SonineBump::d2(double x) const {
  if (std::abs(x) >= delta) return 0.0;
  const double g = 1.0 / (x * x - delta * delta);
  const double g1 = -2.0 * x * g * g;
  const double g2 = (6.0 * x * x + 2.0 * delta * delta) * g * g * g;
  return value(x) * (g2 + g1 * g1);
}

double SonineBump::hat(double y) const {
  const int m = 4000;
  const double h = delta / m;
  std::vector<double> v;
  v.push_back(0.5 * value(0.0));
  for (int k = 1; k < m; ++k) {
    const double t = h * k;
    v.push_back(value(t) * std::cos(2.0 * pi * y * t));
  }
  return 2.0 * kernels::pairwise_sum(v.data(), v.size()) * h;
}

double kahane_pi_conv(const SonineBump& phi, double x) {
  double acc = 0.0;
  const long lo = static_cast<long>(std::ceil(x - phi.delta)), hi = static_cast<long>(std::floor(x + phi.delta));
  for (long n = lo; n <= hi; ++n) {
    if (n == 0) continue;
    const double t = x - static_cast<double>(n), dn = static_cast<double>(n);
    acc += dn * dn * phi.d2(t) - 2.0 * dn * phi.d1(t);
  }
  return acc;
}

SonineResult sonine_construct(double delta, std::size_t n, double x_max) {
  SonineBump phi(delta);
  if (n % 2 == 0) ++n;
  if (n < 65) throw Error(ErrorKind::precondition, "sonine grid needs n >= 65");
  const double h = 2.0 * x_max / static_cast<double>(n - 1);
  if (delta < 8.0 * h) throw Error(ErrorKind::degenerate, "sonine bump is not resolved by the grid");
  SonineResult r;
  r.delta = delta;
  r.f.x_max = x_max;
  r.f.samples.assign(n, 0.0);
  const std::size_t c = (n - 1) / 2;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t k = c; k < n; ++k) {
    const double x = r.f.node(k);
    const double conv = kahane_pi_conv(phi, x);
    r.f.samples[k] = conv == 0.0 ? 0.0 : conv * phi.hat(x);
  }
  for (std::size_t k = c; k < n; ++k) r.f.samples[n - 1 - k] = r.f.samples[k];
  r.boundary = r.f.boundary();

  std::size_t k = c;
  while (k < n && std::abs(r.f.samples[k]) < sonine_position_tol) ++k;
  r.position_radius = k < n ? r.f.node(k) : x_max;

  const double dy = 0.005;
  double y = 0.0;
  while (y < 1.0 && std::abs(fourier_at(r.f, y)) < sonine_fourier_tol) y += dy;
  r.fourier_radius = y;
  return r;
}

} // namespace zl

#include "zetalab/explicit_formula.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "zetalab/kernels.hpp"

namespace zl {

namespace {

double l1_norm(const LogGridFunction& h) {
  double s = 0.0;
  for (const auto& v : h.values) s += std::abs(v);
  return s * h.du();
}

// Gauss-Legendre, 16 nodes on [-1, 1]
constexpr std::array<double, 8> gl_x = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                        0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> gl_w = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                        0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss(F f, double a, double b) {
  double c = 0.5 * (a + b), r = 0.5 * (b - a), s = 0.0;
  for (std::size_t i = 0; i < gl_x.size(); ++i) s += gl_w[i] * (f(c - r * gl_x[i]) + f(c + r * gl_x[i]));
  return s * r;
}

// even part 2 Re-free sum h^(s) + h^(-s) on s = 0, ds, .., C
std::vector<cplx> even_transform(const LogGridFunction& h, double C, double ds, std::vector<double>& s) {
  std::size_t m = static_cast<std::size_t>(std::llround(C / ds));
  s.resize(m + 1);
  std::vector<double> both(2 * (m + 1));
  for (std::size_t k = 0; k <= m; ++k) {
    s[k] = ds * static_cast<double>(k);
    both[k] = s[k];
    both[m + 1 + k] = -s[k];
  }
  auto v = mellin_critical(h, both, C);
  std::vector<cplx> out(m + 1);
  for (std::size_t k = 0; k <= m; ++k) out[k] = v[k] + v[m + 1 + k];
  return out;
}

double trapezoid(const std::vector<double>& f, double ds) {
  if (f.size() < 2) return 0.0;
  std::vector<double> g = f;
  g.front() *= 0.5;
  g.back() *= 0.5;
  return kernels::pairwise_sum(g.data(), g.size()) * ds;
}

} // namespace

double delta_finite(const LogGridFunction& h, long p) {
  if (!is_prime(p)) throw Error(ErrorKind::domain, "delta_finite needs a prime");
  const double lp = std::log(static_cast<double>(p));
  double acc = 0.0;
  for (int n = 1;; ++n) {
    double u = n * lp;
    if (u > h.log_b && -u < h.log_a) break;
    acc += std::exp(-0.5 * u) * (h.at_log(u) + h.at_log(-u)).real();
  }
  return lp * acc;
}

double spectral_cutoff(const LogGridFunction& h, const SpectralConfig& cfg) {
  const double scale = std::max(l1_norm(h), 1e-300);
  for (double C = cfg.cutoff; C <= cfg.max_cutoff * (1 + 1e-12); C *= 2.0) {
    // the transform oscillates, so look at a window below the cutoff
    std::vector<double> probe;
    for (int k = 0; k <= 40; ++k) {
      probe.push_back(C - 0.125 * k);
      probe.push_back(-(C - 0.125 * k));
    }
    auto v = mellin_critical(h, probe);
    double worst = 0.0;
    for (const auto& z : v) worst = std::max(worst, std::abs(z));
    if (worst < cfg.decay_tol * scale) return C;
  }
  std::ostringstream os;
  os << "|h^| has not decayed below " << cfg.decay_tol << " (relative) by s=" << cfg.max_cutoff;
  throw Error(ErrorKind::decay_cutoff, os.str());
}

double delta_spectral(const LogGridFunction& h, const Place& v, const SpectralConfig& cfg) {
  const double C = spectral_cutoff(h, cfg);
  std::vector<double> s;
  auto e = even_transform(h, C, cfg.ds, s);
  std::vector<double> f(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) f[k] = e[k].real() * dlog_u(s[k], v).imag();
  // integral over s > 0 of the even extension
  return kappa * trapezoid(f, cfg.ds) / (2.0 * pi);
}

double delta_inf_direct(const LogGridFunction& h) {
  const double h1 = h.at_log(0.0).real();
  const double L = std::max(std::abs(h.log_a), std::abs(h.log_b));
  auto f = [&](double u) {
    double even = (h.at_log(u) + h.at_log(-u)).real();
    return h1 * std::exp(-2.0 * u) / u - std::exp(-0.5 * u) * even / (-std::expm1(-2.0 * u));
  };
  // graded panels towards u = 0
  double integral = 0.0;
  double lo = 0.0;
  std::vector<double> edges;
  for (int k = 12; k >= 1; --k) edges.push_back(L * std::pow(0.5, k));
  const int panels = 256;
  for (int k = 1; k <= panels; ++k) edges.push_back(L * k / panels);
  for (double hi : edges) {
    if (hi <= lo) continue;
    integral += gauss(f, lo, hi);
    lo = hi;
  }
  const double e1 = -std::expint(-2.0 * L);
  return h1 * std::log(pi) - integral - h1 * e1;
}

double zero_tail_sum_bound(double T, std::size_t count_below_T) {
  const double lT = std::log(T);
  double main = std::log(T / (2.0 * pi)) / (pi * T) + 0.875 / (T * T);
  double err = 0.2 * (lT / (T * T) + 0.5 / (T * T)) + 3.0 / (T * T);
  return std::max(0.0, main + err - static_cast<double>(count_below_T) / (T * T));
}

ZeroSide zero_side(const LogGridFunction& h, const ZeroTable& zeros, double height,
                   const SpectralConfig& cfg) {
  if (zeros.complete_to < height) {
    std::ostringstream os;
    os << "zero table complete to " << zeros.complete_to << " < height " << height;
    throw Error(ErrorKind::insufficient_table, os.str());
  }
  std::vector<double> s;
  for (double g : zeros.ordinates) {
    if (g > height) break;
    s.push_back(g);
    s.push_back(-g);
  }
  auto v = mellin_critical(h, s);
  cplx acc = 0.0;
  double mag = 0.0;
  for (const auto& z : v) {
    acc += z;
    mag += std::abs(z);
  }
  if (std::abs(acc.imag()) > 1e-9 * std::max(mag, 1e-300) + 1e-14)
    throw Error(ErrorKind::precondition, "zero side is not real; h must be real or hermitian");
  ZeroSide out;
  out.value = acc.real();
  // sup of |h^(s)|(1+s^2) above the height, sampled
  double top = std::max(4.0 * height, cfg.cutoff);
  std::vector<double> probe;
  for (double t = height; t <= top; t += cfg.ds) {
    probe.push_back(t);
    probe.push_back(-t);
  }
  double band = top;
  try {
    band = std::max(band, spectral_cutoff(h, cfg));
  } catch (const Error&) {
    band = 0.0;
  }
  auto w = band > 0.0 ? mellin_critical(h, probe, band) : mellin_critical(h, probe);
  double M = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) M = std::max(M, std::abs(w[k]) * (1.0 + probe[k] * probe[k]));
  out.tail_bound = 2.0 * M * zero_tail_sum_bound(height, zeros.count_below(height));
  return out;
}

double pole_side(const LogGridFunction& h) { return (moment(h, 0.5) + moment(h, -0.5)).real(); }

ExplicitFormulaReport balance(const LogGridFunction& h, const ZeroTable& zeros,
                              const std::vector<Place>& S, double height, const SpectralConfig& cfg) {
  for (const Place& v : relevant_places(h, true)) {
    if (std::find(S.begin(), S.end(), v) == S.end())
      throw Error(ErrorKind::precondition, "place " + v.name() + " is relevant for h but not in S");
  }
  ExplicitFormulaReport r;
  ZeroSide z = zero_side(h, zeros, height, cfg);
  r.zero_side = z.value;
  r.tail_bound = z.tail_bound;
  r.truncation_height = height;
  r.pole_side = pole_side(h);
  for (const Place& v : S) {
    LocalTermReport t;
    t.place = v;
    t.spectral_value = delta_spectral(h, v, cfg);
    t.direct_value = v.is_inf() ? delta_inf_direct(h) : delta_finite(h, v.p);
    t.discrepancy = std::abs(t.direct_value - t.spectral_value);
    r.local_sum += v.is_inf() ? t.spectral_value : t.direct_value;
    r.local_terms.push_back(t);
  }
  r.residual = std::abs(r.zero_side - r.pole_side + r.local_sum);
  return r;
}

double weil_functional(const LogGridFunction& h, const std::vector<Place>& S, const SpectralConfig& cfg) {
  double w = 0.0;
  for (const Place& v : S) w += v.is_inf() ? delta_spectral(h, v, cfg) : delta_finite(h, v.p);
  return w;
}

PositivityReport positivity_experiment(int q, int trials, std::uint64_t seed, const ZeroTable& zeros,
                                       std::size_t n) {
  if (q < 2) throw Error(ErrorKind::domain, "positivity experiment needs q >= 2");
  PositivityReport rep;
  rep.q = q;
  rep.trials = std::max(trials, 0);
  rep.seed = seed;
  rep.places.push_back(Place::inf());
  for (long p : primes_below(q)) rep.places.push_back(Place::prime(p));
  // supp h = [a/b, b/a] has log half-width 2w, kept inside (q^-1/2, q^1/2)
  rep.h1_log_half_width = 0.95 * std::log(static_cast<double>(q)) / 4.0;
  rep.records.resize(rep.trials);
  for (int i = 0; i < rep.trials; ++i) {
    TrialRecord& t = rep.records[i];
    t.trial = i;
    t.seed = seed + static_cast<std::uint64_t>(i);
    std::uint64_t mix = t.seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
    t.log_center = -0.5 + static_cast<double>(mix >> 11) / 9007199254740992.0;
    LogGridFunction g = random_generator(t.seed, t.log_center, rep.h1_log_half_width, n);
    WeilTestPair pair = make_weil_pair(g);
    t.weil = weil_functional(pair.h, rep.places);
    ZeroSide z = zero_side(pair.h, zeros);
    t.zero_side = z.value;
    t.tail_bound = z.tail_bound;
    t.agreement = std::abs(t.weil + t.zero_side);
    t.agrees = t.agreement <= t.tail_bound + weil_slack;
  }
  rep.min_weil = rep.records.empty() ? 0.0 : rep.records.front().weil;
  rep.max_weil = rep.min_weil;
  for (const auto& t : rep.records) {
    rep.min_weil = std::min(rep.min_weil, t.weil);
    rep.max_weil = std::max(rep.max_weil, t.weil);
    if (t.weil > weil_slack) ++rep.sign_violations;
    if (!t.agrees) ++rep.disagreements;
  }
  return rep;
}

LogGridFunction local_counterexample(std::size_t n) {
  LogGridFunction h1 = log_bump(0.0, 0.3, 1.0, n);
  return mconvolve(h1, adjoint(h1));
}

} // namespace zl

#include "zetalab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace zl {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long> primes_below(long q) {
  std::vector<long> out;
  for (long p = 2; p < q; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

Place Place::prime(long p) {
  if (!is_prime(p)) throw Error(ErrorKind::domain, "place p=" + std::to_string(p) + " is not prime");
  Place v;
  v.kind = Kind::finite;
  v.p = p;
  return v;
}

std::string Place::name() const { return is_inf() ? "inf" : std::to_string(p); }

namespace {

const cplx I(0.0, 1.0);

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// g = 7, n = 9
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx z) {
  // Re z >= 1/2
  cplx w = z - 1.0;
  cplx a = lanczos_p[0];
  for (int k = 1; k < 9; ++k) a += lanczos_p[k] / (w + static_cast<double>(k));
  cplx t = w + 7.5;
  return 0.5 * std::log(2.0 * pi) + (w + 0.5) * std::log(t) - t + std::log(a);
}

// B_2 .. B_24
constexpr std::array<double, 12> bernoulli2k = {
    1.0 / 6.0,       -1.0 / 30.0,          1.0 / 42.0,     -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,      7.0 / 6.0,      -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,    854513.0 / 138.0, -236364091.0 / 2730.0};

} // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorKind::pole, "log_gamma at nonpositive integer " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_right(z);
  int m = static_cast<int>(std::ceil(0.5 - z.real()));
  cplx acc = 0.0;
  for (int k = 0; k < m; ++k) acc += std::log(z + static_cast<double>(k));
  return log_gamma_right(z + static_cast<double>(m)) - acc;
}

cplx digamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorKind::pole, "digamma at nonpositive integer " + std::to_string(z.real()));
  cplx shift = 0.0;
  while (z.real() < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  cplx w2 = 1.0 / (z * z);
  cplx wp = w2;
  cplx acc = std::log(z) - 0.5 / z;
  for (int k = 1; k <= 8; ++k) {
    acc -= bernoulli2k[k - 1] / (2.0 * k) * wp;
    wp *= w2;
  }
  return acc + shift;
}

cplx zeta_chi(cplx s) {
  return std::exp((s - 0.5) * std::log(pi) + log_gamma((1.0 - s) / 2.0) - log_gamma(s / 2.0));
}

cplx zeta_em(cplx s, const ZetaConfig& cfg) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::pole, "zeta at s=1");
  if (std::abs(s.imag()) > cfg.height_bound || s.real() < cfg.min_real) {
    std::ostringstream os;
    os << "zeta_em outside supported region at s=" << s;
    throw Error(ErrorKind::domain, os.str());
  }
  if (s.real() < 0.0) {
    if (s.imag() == 0.0 && std::fmod(-s.real(), 2.0) == 0.0) return 0.0;
    return zeta_chi(s) * zeta_em(1.0 - s, cfg);
  }
  if (s == cplx(0.0, 0.0)) return -0.5;
  const int N = std::max(cfg.min_terms, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))) + 10);
  cplx sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logN = std::log(static_cast<double>(N));
  cplx Ns = std::exp(-s * logN);
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  // B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  cplx poch = s;
  cplx pw = Ns / static_cast<double>(N);
  double fact = 2.0;
  const int M = std::min<int>(cfg.bernoulli_terms, static_cast<int>(bernoulli2k.size()));
  for (int k = 1; k <= M; ++k) {
    sum += bernoulli2k[k - 1] / fact * poch * pw;
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw /= static_cast<double>(N) * static_cast<double>(N);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

double theta_rs(double t) {
  return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(pi);
}

double theta_prime(double t) {
  return 0.5 * digamma(cplx(0.25, 0.5 * t)).real() - 0.5 * std::log(pi);
}

double hardy_z(double t) {
  return (std::exp(I * theta_rs(t)) * zeta_em(cplx(0.5, t))).real();
}

cplx phi(cplx z) {
  cplx w = (1.0 - z) / 2.0;
  if (is_nonpositive_integer(w)) return 0.0;
  if (is_nonpositive_integer(z / 2.0)) {
    std::ostringstream os;
    os << "phi has a pole at z=" << z;
    throw Error(ErrorKind::pole, os.str());
  }
  return std::exp((0.5 - z) * std::log(pi) + log_gamma(z / 2.0) - log_gamma(w));
}

cplx u_inf(double s) { return phi(cplx(0.5, s)); }

cplx u_p(double s, long p) {
  const double lp = std::log(static_cast<double>(p));
  const double r = 1.0 / std::sqrt(static_cast<double>(p));
  cplx e = std::exp(I * (s * lp));
  return (1.0 - r * e) / (1.0 - r / e);
}

cplx u_place(double s, const Place& v) { return v.is_inf() ? u_inf(s) : u_p(s, v.p); }

cplx dlog_u(double s, const Place& v) {
  if (v.is_inf()) return 2.0 * I * theta_prime(s);
  const double lp = std::log(static_cast<double>(v.p));
  const double r = 1.0 / std::sqrt(static_cast<double>(v.p));
  // p^{n(z-1)} + p^{-nz} = r^n (e^{ins lp} + e^{-ins lp})
  cplx acc = 0.0;
  double rn = r;
  for (int n = 1; n < 400; ++n) {
    acc += rn * 2.0 * std::cos(n * s * lp);
    rn *= r;
    // remaining tail sum_{m>n} 2 r^m = 2 r^{n+1}/(1-r)
    if (2.0 * rn / (1.0 - r) < 1e-14 * 2.0 * r) break;
  }
  return I * (-lp) * acc;
}

std::size_t ZeroTable::count_below(double T) const {
  return static_cast<std::size_t>(std::upper_bound(ordinates.begin(), ordinates.end(), T) -
                                  ordinates.begin());
}

void ZeroTable::validate() const {
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > 0.0) || ordinates[i] > complete_to)
      throw Error(ErrorKind::domain, "zero ordinate " + std::to_string(i) + " outside (0, T]");
    if (i > 0 && !(ordinates[i] > ordinates[i - 1]))
      throw Error(ErrorKind::monotonicity, "zero ordinates not increasing at index " + std::to_string(i));
  }
}

double theta_count_estimate(double T) { return theta_rs(T) / pi + 1.0; }

ZeroTable find_zeros(double t_max, double step) {
  ZetaConfig cfg;
  if (t_max > cfg.height_bound)
    throw Error(ErrorKind::domain, "find_zeros above supported height " + std::to_string(cfg.height_bound));
  const std::size_t m = static_cast<std::size_t>(std::floor(t_max / step));
  std::vector<double> z(m + 1);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(m); ++k) z[k] = hardy_z(step * k);
  std::vector<double> grid(m + 1);
  for (std::size_t k = 0; k <= m; ++k) grid[k] = step * k;
  if (grid.back() < t_max) {
    grid.push_back(t_max);
    z.push_back(hardy_z(t_max));
  }
  ZeroTable out;
  out.complete_to = t_max;
  out.precision = 9;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if ((z[k] < 0.0) == (z[k + 1] < 0.0)) continue;
    double a = grid[k], b = grid[k + 1], za = z[k];
    while (b - a > 1e-10) {
      double c = 0.5 * (a + b);
      double zc = hardy_z(c);
      if ((zc < 0.0) == (za < 0.0)) {
        a = c;
        za = zc;
      } else {
        b = c;
      }
    }
    out.ordinates.push_back(0.5 * (a + b));
  }
  // |S(T)| < 1 in this range, so the count lies within 2 of theta(T)/pi + 1
  double est = theta_count_estimate(t_max);
  double n = static_cast<double>(out.ordinates.size());
  if (std::abs(n - est) >= 2.0) {
    std::ostringstream os;
    os << "found " << out.ordinates.size() << " zeros below " << t_max << ", estimate " << est;
    throw Error(ErrorKind::missed_zero, os.str());
  }
  return out;
}

void write_zero_table(const ZeroTable& z, std::ostream& os) {
  os << "# zeros complete_to=" << std::setprecision(12) << z.complete_to << " precision=" << z.precision
     << "\n";
  os << std::fixed << std::setprecision(12);
  for (double g : z.ordinates) os << g << "\n";
  os.unsetf(std::ios::floatfield);
}

ZeroTable read_zero_table(std::istream& is) {
  ZeroTable z;
  bool have_height = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      auto pos = line.find("complete_to=");
      if (pos != std::string::npos) {
        z.complete_to = std::stod(line.substr(pos + 12));
        have_height = true;
      }
      pos = line.find("precision=");
      if (pos != std::string::npos) z.precision = std::stoi(line.substr(pos + 10));
      continue;
    }
    std::istringstream ls(line);
    double g = 0.0;
    std::string rest;
    if (!(ls >> g) || (ls >> rest)) throw Error(ErrorKind::parse, "zero table line " + std::to_string(lineno));
    if (!z.ordinates.empty() && !(g > z.ordinates.back()))
      throw Error(ErrorKind::monotonicity, "zero table line " + std::to_string(lineno) + " out of order");
    z.ordinates.push_back(g);
  }
  if (!have_height) z.complete_to = z.ordinates.empty() ? 0.0 : z.ordinates.back();
  z.validate();
  return z;
}

ZeroTable read_zero_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open zero table " + path);
  return read_zero_table(in);
}

} // namespace zl

#include "zetalab/mult_testfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "zetalab/kernels.hpp"

namespace zl {

double LogGridFunction::a() const { return std::exp(log_a); }
double LogGridFunction::b() const { return std::exp(log_b); }

cplx LogGridFunction::at_log(double u) const {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  if (n < 2 || u <= log_a || u >= log_b) return 0.0;
  const double h = du();
  const double x = (u - log_a) / h;
  std::ptrdiff_t k = static_cast<std::ptrdiff_t>(std::floor(x));
  const double t = x - static_cast<double>(k);
  if (t == 0.0 && k < n) return values[k];
  auto v = [&](std::ptrdiff_t i) -> cplx { return (i < 0 || i >= n) ? cplx(0.0) : values[i]; };
  // nodes k-1, k, k+1, k+2 at offsets -1, 0, 1, 2
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * v(k - 1) + w1 * v(k) + w2 * v(k + 1) + w3 * v(k + 2);
}

cplx LogGridFunction::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  return at_log(std::log(x));
}

LogGridFunction LogGridFunction::scaled(cplx c) const {
  LogGridFunction r = *this;
  for (auto& v : r.values) v *= c;
  return r;
}

LogGridFunction LogGridFunction::times_power(double alpha) const {
  LogGridFunction r = *this;
  for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] *= std::exp(alpha * log_node(k));
  return r;
}

LogGridFunction LogGridFunction::from_log(double log_a, double log_b, std::size_t n,
                                          const std::function<cplx(double)>& H) {
  if (!(log_b > log_a)) throw Error(ErrorKind::domain, "support must satisfy a < b");
  if (n < 4) throw Error(ErrorKind::domain, "log grid needs at least 4 samples");
  LogGridFunction f;
  f.log_a = log_a;
  f.log_b = log_b;
  f.values.resize(n);
  const double h = (log_b - log_a) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k + 1 < n; ++k) f.values[k] = H(log_a + h * static_cast<double>(k));
  f.values.front() = 0.0;
  f.values.back() = 0.0;
  return f;
}

double smooth_bump(double t, double sharpness) {
  double q = 1.0 - t * t;
  if (q <= 0.0) return 0.0;
  return std::exp(sharpness - sharpness / q);
}

LogGridFunction log_bump(double log_center, double log_half_width, double sharpness, std::size_t n) {
  if (!(log_half_width > 0.0)) throw Error(ErrorKind::domain, "bump half-width must be positive");
  return LogGridFunction::from_log(log_center - log_half_width, log_center + log_half_width, n,
                                   [=](double u) {
                                     return cplx(smooth_bump((u - log_center) / log_half_width, sharpness));
                                   });
}

LogGridFunction bump(double a, double b, double sharpness, std::size_t n) {
  if (!(a > 0.0 && b > a)) throw Error(ErrorKind::domain, "bump support must satisfy 0 < a < b");
  double la = std::log(a), lb = std::log(b);
  return log_bump(0.5 * (la + lb), 0.5 * (lb - la), sharpness, n);
}

LogGridFunction gausslog(double center, double width, std::size_t n) {
  if (!(center > 0.0 && width > 0.0)) throw Error(ErrorKind::domain, "gausslog needs center, width > 0");
  double c = std::log(center);
  return LogGridFunction::from_log(c - 8.0 * width, c + 8.0 * width, n, [=](double u) {
    double t = (u - c) / width;
    return cplx(std::exp(-t * t));
  });
}

namespace {

std::map<std::string, double> parse_params(const std::string& body, const std::string& spec) {
  std::map<std::string, double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::parse, "bad test function spec '" + spec + "'");
    std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
      out[key] = v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "bad value for '" + key + "' in '" + spec + "'");
    }
  }
  return out;
}

double need(const std::map<std::string, double>& p, const std::string& k, const std::string& spec) {
  auto it = p.find(k);
  if (it == p.end()) throw Error(ErrorKind::parse, "missing '" + k + "' in '" + spec + "'");
  return it->second;
}

} // namespace

LogGridFunction parse_testfn(const std::string& spec, std::size_t n) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto p = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  for (const auto& [k, v] : p) {
    static const std::array<const char*, 6> known = {"a", "b", "k", "center", "width", "n"};
    if (std::find_if(known.begin(), known.end(), [&](const char* s) { return k == s; }) == known.end())
      throw Error(ErrorKind::parse, "unknown parameter '" + k + "' in '" + spec + "'");
  }
  if (p.count("n")) n = static_cast<std::size_t>(p["n"]);
  if (kind == "bump") {
    double k = p.count("k") ? p["k"] : 1.0;
    if (p.count("a") || p.count("b")) return bump(need(p, "a", spec), need(p, "b", spec), k, n);
    double c = need(p, "center", spec), w = need(p, "width", spec);
    if (!(c > 0.0)) throw Error(ErrorKind::domain, "bump center must be positive");
    return log_bump(std::log(c), w, k, n);
  }
  if (kind == "gausslog") return gausslog(need(p, "center", spec), need(p, "width", spec), n);
  throw Error(ErrorKind::parse, "unknown test function kind '" + kind + "'");
}

LogGridFunction random_generator(std::uint64_t seed, double log_center, double log_half_width,
                                 std::size_t n, double sharpness) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 7> c{};
  for (auto& v : c) v = normal(rng);
  return LogGridFunction::from_log(log_center - log_half_width, log_center + log_half_width, n,
                                   [&](double u) {
                                     double t = (u - log_center) / log_half_width;
                                     double t0 = 1.0, t1 = t, acc = c[0] + c[1] * t;
                                     for (std::size_t j = 2; j < c.size(); ++j) {
                                       double t2 = 2.0 * t * t1 - t0;
                                       acc += c[j] * t2;
                                       t0 = t1;
                                       t1 = t2;
                                     }
                                     return cplx(acc * smooth_bump(t, sharpness));
                                   });
}

cplx moment(const LogGridFunction& h, double alpha) {
  std::vector<cplx> w(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) w[k] = h.values[k] * std::exp(alpha * h.log_node(k));
  return kernels::pairwise_sum(w.data(), w.size()) * h.du();
}

cplx integral_dstar(const LogGridFunction& h) {
  return kernels::pairwise_sum(h.values.data(), h.values.size()) * h.du();
}

cplx integral_dx(const LogGridFunction& h) { return moment(h, 1.0); }

namespace {

LogGridFunction resample(const LogGridFunction& f, double log_a, double log_b, std::size_t n) {
  return LogGridFunction::from_log(log_a, log_b, n, [&](double u) { return f.at_log(u); });
}

} // namespace

LogGridFunction mconvolve(const LogGridFunction& h1, const LogGridFunction& h2) {
  const double du = h1.du();
  const double la = h1.log_a + h2.log_a, lb = h1.log_b + h2.log_b;
  const std::size_t nout = h1.size() + h2.size() - 1;
  const LogGridFunction* b = &h2;
  LogGridFunction tmp;
  const bool same = std::abs(h2.du() - du) <= 1e-12 * du;
  if (!same) {
    std::size_t m = static_cast<std::size_t>(std::ceil((h2.log_b - h2.log_a) / du - 1e-9));
    tmp = resample(h2, h2.log_a, h2.log_a + du * static_cast<double>(m), m + 1);
    b = &tmp;
  }
  LogGridFunction out;
  out.log_a = la;
  out.values.resize(h1.size() + b->size() - 1);
  kernels::parallel::mconvolve(h1.values.data(), h1.size(), b->values.data(), b->size(), du,
                               out.values.data());
  out.log_b = la + du * static_cast<double>(out.values.size() - 1);
  out.values.front() = 0.0;
  out.values.back() = 0.0;
  if (same) {
    out.log_b = lb;
    return out;
  }
  return resample(out, la, lb, nout);
}

LogGridFunction adjoint(const LogGridFunction& h) {
  LogGridFunction r;
  r.log_a = -h.log_b;
  r.log_b = -h.log_a;
  r.values.assign(h.values.rbegin(), h.values.rend());
  for (auto& v : r.values) v = std::conj(v);
  return r;
}

cplx mellin_critical(const LogGridFunction& h, cplx s) {
  cplx out;
  kernels::parallel::mellin(h.values.data(), h.size(), h.log_a, h.du(), &s, 1, &out);
  return out;
}

std::vector<cplx> mellin_critical(const LogGridFunction& h, const std::vector<double>& s) {
  std::vector<cplx> sc(s.begin(), s.end());
  std::vector<cplx> out(s.size());
  kernels::parallel::mellin(h.values.data(), h.size(), h.log_a, h.du(), sc.data(), sc.size(), out.data());
  return out;
}

std::vector<cplx> mellin_critical(const LogGridFunction& h, const std::vector<double>& s, double band) {
  double top = band;
  for (double v : s) top = std::max(top, std::abs(v));
  // aliases land beyond 2 * top
  const double step = 2.0 * pi / (3.0 * top);
  const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(step / h.du()));
  if (stride == 1) return mellin_critical(h, s);
  std::vector<cplx> sub;
  for (std::size_t k = 0; k < h.size(); k += stride) sub.push_back(h.values[k]);
  std::vector<cplx> sc(s.begin(), s.end());
  std::vector<cplx> out(s.size());
  kernels::parallel::mellin(sub.data(), sub.size(), h.log_a, h.du() * static_cast<double>(stride), sc.data(),
                            sc.size(), out.data());
  return out;
}

WeilTestPair make_weil_pair(const LogGridFunction& g) {
  const double c = 0.5 * (g.log_a + g.log_b);
  const double w = 0.5 * (g.log_b - g.log_a);
  const double bw = w / 3.0;
  if (bw / g.du() < 16.0)
    throw Error(ErrorKind::degenerate, "support of g too small for the projection bumps");
  auto beta = [&](double center) {
    return LogGridFunction::from_log(g.log_a, g.log_b, g.size(), [&](double u) {
      return cplx(smooth_bump((u - center) / bw, 1.0));
    });
  };
  LogGridFunction b1 = beta(c - bw), b2 = beta(c + bw);
  // [int b dx ; int b d*x] alpha = [int g dx ; int g d*x]
  cplx m11 = integral_dx(b1), m12 = integral_dx(b2);
  cplx m21 = integral_dstar(b1), m22 = integral_dstar(b2);
  cplx r1 = integral_dx(g), r2 = integral_dstar(g);
  cplx det = m11 * m22 - m12 * m21;
  if (std::abs(det) < 1e-14 * std::abs(m11 * m22))
    throw Error(ErrorKind::degenerate, "singular moment system");
  cplx a1 = (r1 * m22 - m12 * r2) / det;
  cplx a2 = (m11 * r2 - m21 * r1) / det;
  WeilTestPair out;
  out.g = g;
  for (std::size_t k = 0; k < g.size(); ++k) out.g.values[k] -= a1 * b1.values[k] + a2 * b2.values[k];
  out.h1 = out.g.times_power(0.5);
  double scale = 0.0;
  for (const auto& v : out.h1.values) scale = std::max(scale, std::abs(v));
  double tol = 1e-10 * std::max(1.0, scale);
  if (std::abs(moment(out.h1, 0.5)) > tol || std::abs(moment(out.h1, -0.5)) > tol)
    throw Error(ErrorKind::degenerate, "moment projection did not converge");
  out.h = mconvolve(out.h1, adjoint(out.h1));
  return out;
}

std::vector<Place> relevant_places(const LogGridFunction& h, bool include_inf) {
  std::vector<Place> out;
  if (include_inf) out.push_back(Place::inf());
  const double a = h.a(), b = h.b();
  const double top = std::max(b, 1.0 / a);
  for (long p = 2; p <= static_cast<long>(top); ++p) {
    if (!is_prime(p)) continue;
    bool hit = false;
    for (double q = static_cast<double>(p); q <= top * (1 + 1e-12); q *= static_cast<double>(p)) {
      if ((q >= a * (1 - 1e-12) && q <= b * (1 + 1e-12)) ||
          (1.0 / q >= a * (1 - 1e-12) && 1.0 / q <= b * (1 + 1e-12)))
        hit = true;
    }
    if (hit) out.push_back(Place::prime(p));
  }
  return out;
}

void write_csv(const LogGridFunction& h, std::ostream& os) {
  os << "log_x,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < h.size(); ++k)
    os << h.log_node(k) << "," << h.values[k].real() << "," << h.values[k].imag() << "\n";
}

LogGridFunction read_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> u;
  std::vector<cplx> v;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("log_x", 0) == 0) continue;
    std::array<double, 3> f{};
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, cell, ',')) throw Error(ErrorKind::parse, "csv line " + std::to_string(lineno));
      try {
        f[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "csv line " + std::to_string(lineno));
      }
    }
    u.push_back(f[0]);
    v.emplace_back(f[1], f[2]);
  }
  if (u.size() < 4) throw Error(ErrorKind::parse, "csv needs at least 4 samples");
  LogGridFunction h;
  h.log_a = u.front();
  h.log_b = u.back();
  h.values = v;
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, std::abs(x));
  for (std::size_t k = 0; k < u.size(); ++k)
    if (std::abs(u[k] - h.log_node(k)) > 1e-9 * std::max(1.0, std::abs(u[k])))
      throw Error(ErrorKind::parse, "csv grid not uniform at sample " + std::to_string(k));
  if (std::abs(v.front()) > 1e-12 * scale || std::abs(v.back()) > 1e-12 * scale)
    throw Error(ErrorKind::domain, "csv function does not vanish at the support endpoints");
  h.values.front() = 0.0;
  h.values.back() = 0.0;
  return h;
}

} // namespace zl

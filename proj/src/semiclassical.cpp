#include "zetalab/semiclassical.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace zl {

namespace {

struct GaussRule {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes on [-1, 1] by Newton on P_n
GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule g = gauss_legendre(20);
  return g;
}

// composite Gauss on [a, b] with geometric cells (the integrands carry 1/q)
double integrate_1d(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  const auto& g = rule();
  std::vector<double> cuts = {a};
  if (a > 0.0) {
    const int cells = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / std::log(1.25))));
    for (int c = 1; c < cells; ++c) cuts.push_back(a * std::pow(b / a, static_cast<double>(c) / cells));
  } else {
    for (int c = 1; c < 8; ++c) cuts.push_back(a + (b - a) * c / 8.0);
  }
  cuts.push_back(b);
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double m = 0.5 * (cuts[c] + cuts[c + 1]), r = 0.5 * (cuts[c + 1] - cuts[c]);
    for (std::size_t k = 0; k < g.x.size(); ++k) acc += r * g.w[k] * f(m + r * g.x[k]);
  }
  return acc;
}

// int_{q0}^{q1} int_{lo(q)}^{hi(q)} w(q, p) dp dq
double integrate_2d(double q0, double q1, const std::function<double(double)>& lo,
                    const std::function<double(double)>& hi, const std::function<double(double, double)>& w) {
  const auto& g = rule();
  return integrate_1d(
      [&](double q) {
        const double a = lo(q), b = hi(q);
        const double m = 0.5 * (a + b), r = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t k = 0; k < g.x.size(); ++k) acc += r * g.w[k] * w(q, m + r * g.x[k]);
        return acc;
      },
      q0, q1);
}

struct RegionShape {
  // q-intervals with p-bounds
  struct Piece {
    double q0, q1;
    std::function<double(double)> lo, hi;
  };
  std::vector<Piece> pieces;
  double qmin, qmax, pmax;
};

RegionShape shape(Region r, const PhaseConfig& cfg) {
  const double L = cfg.lambda, e = cfg.E / (2.0 * pi);
  auto zero = [](double) { return 0.0; };
  auto hyper = [e](double q) { return e / q; };
  auto top = [L](double) { return L; };
  RegionShape s;
  switch (r) {
  case Region::box:
    s.pieces = {{0.0, e / L, zero, top}, {e / L, L, zero, hyper}};
    s.qmin = 0.0, s.qmax = L, s.pmax = L;
    break;
  case Region::white:
    s.pieces = {{1.0 / L, L, zero, hyper}};
    s.qmin = 1.0 / L, s.qmax = L, s.pmax = e * L;
    break;
  case Region::darkblue:
    s.pieces = {{1.0 / L, e / L, top, hyper}};
    s.qmin = 1.0 / L, s.qmax = e / L, s.pmax = e * L;
    break;
  case Region::unit_rect:
    s.pieces = {{0.0, 1.0 / L, zero, top}};
    s.qmin = 0.0, s.qmax = 1.0 / L, s.pmax = L;
    break;
  }
  return s;
}

bool inside(Region r, const PhaseConfig& cfg, double q, double p) {
  const double L = cfg.lambda, e = cfg.E / (2.0 * pi);
  switch (r) {
  case Region::box:
    return q <= L && p <= L && p * q <= e;
  case Region::white:
    return q >= 1.0 / L && q <= L && p * q <= e;
  case Region::darkblue:
    return q >= 1.0 / L && p >= L && p * q <= e;
  case Region::unit_rect:
    return q <= 1.0 / L && p <= L;
  }
  return false;
}

void require_darkblue(const PhaseConfig& cfg) {
  if (cfg.E < 2.0 * pi) throw Error(ErrorKind::domain, "the accounting needs E >= 2 pi");
}

} // namespace

void validate(const PhaseConfig& cfg) {
  if (!(cfg.E > 0.0)) throw Error(ErrorKind::domain, "energy must be positive");
  if (!(cfg.lambda >= 1.0)) throw Error(ErrorKind::domain, "cutoff must be >= 1");
  if (cfg.E / (2.0 * pi) > cfg.lambda * cfg.lambda * (1.0 + 1e-15))
    throw Error(ErrorKind::domain, "hyperbola misses the box: E/2pi = " + std::to_string(cfg.E / (2.0 * pi)));
}

double area_box(const PhaseConfig& cfg) {
  validate(cfg);
  const double e = cfg.E / (2.0 * pi);
  return e * (1.0 + std::log(cfg.lambda * cfg.lambda / e));
}

double area_white(const PhaseConfig& cfg) { return cfg.E / pi * std::log(cfg.lambda); }

Accounting accounting(const PhaseConfig& cfg) {
  validate(cfg);
  require_darkblue(cfg);
  Accounting a;
  a.unit_rect = 1.0;
  a.darkblue = area_white(cfg) - area_box(cfg) + a.unit_rect;
  const double qd = region_quadrature(Region::darkblue, cfg);
  const double qw = region_quadrature(Region::white, cfg);
  const double qf = region_quadrature(Region::box, cfg);
  const double qu = region_quadrature(Region::unit_rect, cfg);
  a.residual = std::abs(qd - (qw - qf + qu));
  return a;
}

double region_quadrature(Region r, const PhaseConfig& cfg) {
  validate(cfg);
  if (r == Region::darkblue) require_darkblue(cfg);
  double acc = 0.0;
  for (const auto& pc : shape(r, cfg).pieces)
    acc += integrate_2d(pc.q0, pc.q1, pc.lo, pc.hi, [](double, double) { return 1.0; });
  return acc;
}

double sigma_image_area(Region r, const PhaseConfig& cfg) {
  validate(cfg);
  if (r == Region::darkblue) require_darkblue(cfg);
  double acc = 0.0;
  for (const auto& pc : shape(r, cfg).pieces)
    acc += integrate_2d(pc.q0, pc.q1, pc.lo, pc.hi, [&](double q, double p) {
      return std::abs(jacobian_det(SymplecticMap::sigma, {q, p}, cfg.lambda));
    });
  return acc;
}

MonteCarloArea area_monte_carlo(Region r, const PhaseConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
  validate(cfg);
  if (r == Region::darkblue) require_darkblue(cfg);
  if (samples == 0) throw Error(ErrorKind::precondition, "monte carlo needs samples > 0");
  const RegionShape s = shape(r, cfg);
  const double box = (s.qmax - s.qmin) * s.pmax;
  constexpr std::uint64_t chunk = 65536;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  std::uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(seed + c);
    std::uniform_real_distribution<double> uq(s.qmin, s.qmax), up(0.0, s.pmax);
    const std::uint64_t m = std::min(chunk, samples - c * chunk);
    for (std::uint64_t k = 0; k < m; ++k) {
      const double q = uq(rng), p = up(rng);
      if (inside(r, cfg, q, p)) ++hits;
    }
  }
  MonteCarloArea out;
  out.hits = hits;
  out.samples = samples;
  const double f = static_cast<double>(hits) / static_cast<double>(samples);
  out.area = box * f;
  out.std_error = box * std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  return out;
}

Point phi_map(const Point& uv) { return {std::exp(uv[0]), uv[1] * std::exp(-uv[0])}; }

Point sigma_map(const Point& qp, double lambda) { return {lambda * qp[0], qp[1] / lambda}; }

Point apply_map(SymplecticMap m, const Point& x, double lambda) {
  return m == SymplecticMap::phi ? phi_map(x) : sigma_map(x, lambda);
}

double jacobian_det(SymplecticMap m, const Point& x, double lambda) {
  // 4-point central differences
  double J[2][2];
  for (int j = 0; j < 2; ++j) {
    const double h = 1e-3 * std::max(1.0, std::abs(x[j]));
    Point a = x, b = x, c = x, d = x;
    a[j] += h, b[j] -= h, c[j] += 2 * h, d[j] -= 2 * h;
    const Point fa = apply_map(m, a, lambda), fb = apply_map(m, b, lambda);
    const Point fc = apply_map(m, c, lambda), fd = apply_map(m, d, lambda);
    for (int i = 0; i < 2; ++i) J[i][j] = (8.0 * (fa[i] - fb[i]) - (fc[i] - fd[i])) / (12.0 * h);
  }
  return J[0][0] * J[1][1] - J[0][1] * J[1][0];
}

double jacobian_check(SymplecticMap m, double lambda, std::uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.1, 4.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const Point x = {ux(rng), uy(rng)};
    worst = std::max(worst, std::abs(jacobian_det(m, x, lambda) - 1.0));
  }
  return worst;
}

double semiclassical_count(double E) {
  if (!(E > 0.0)) throw Error(ErrorKind::domain, "energy must be positive");
  const double e = E / (2.0 * pi);
  return e * (std::log(e) - 1.0) + count_constant;
}

CountComparison compare_to_zeros(double E, const ZeroTable& zeros) {
  if (E > zeros.complete_to)
    throw Error(ErrorKind::insufficient_table, "zero table complete only to " + std::to_string(zeros.complete_to));
  CountComparison c;
  c.E = E;
  c.pred = semiclassical_count(E);
  c.actual = zeros.count_below(E);
  c.diff = c.pred - static_cast<double>(c.actual);
  return c;
}

double lambda_independence(double E, const std::vector<double>& lambdas) {
  const double target = semiclassical_count(E) - count_constant;
  double worst = 0.0;
  for (double L : lambdas) {
    const auto a = accounting({E, L});
    worst = std::max(worst, std::abs(a.darkblue - a.unit_rect - target));
  }
  return worst;
}

} // namespace zl

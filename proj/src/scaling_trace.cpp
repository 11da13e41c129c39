#include "zetalab/scaling_trace.hpp"

#include <cmath>

#include "zetalab/explicit_formula.hpp"
#include "zetalab/kernels.hpp"

namespace zl {

namespace {

constexpr int taps = 24;
constexpr double window_width = 4.0;
constexpr std::size_t lambda_nodes = 801;

// windowed sinc weights of xi(y) onto grid samples, accumulated into row
template <class Row>
void add_interpolation(double y, double weight, const HalfLineGrid& grid, Row&& row) {
  const double pos = y / grid.spacing() - 0.5;
  const long base = static_cast<long>(std::floor(pos));
  const long n = static_cast<long>(grid.n);
  for (long j = base - taps + 1; j <= base + taps; ++j) {
    const double t = pos - static_cast<double>(j);
    if (std::abs(t) >= taps) continue;
    const double s = t == 0.0 ? 1.0 : std::sin(pi * t) / (pi * t);
    // x_{-1-k} = -x_k
    const long jm = j < 0 ? -j - 1 : j;
    if (jm >= n) continue;
    row(jm) += weight * s * std::exp(-0.5 * t * t / (window_width * window_width));
  }
}

std::size_t cutoff_count(const HalfLineGrid& grid, double lambda) {
  std::size_t p = 0;
  while (p < grid.n && grid.x(p) <= lambda) ++p;
  return p;
}

} // namespace

HalfLineGrid::HalfLineGrid(std::size_t n_) : n(n_) {
  if (n < 512) throw Error(ErrorKind::precondition, "half-line grid needs n >= 512");
}

std::vector<double> HalfLineGrid::nodes() const {
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = this->x(k);
  return x;
}

Eigen::VectorXd HalfLineGrid::sample(const std::function<double(double)>& f) const {
  Eigen::VectorXd v(n);
  for (std::size_t k = 0; k < n; ++k) v(k) = f(x(k));
  return v;
}

void validate(const CutoffConfig& cfg, const HalfLineGrid& grid) {
  if (!(cfg.lambda > 1.0)) throw Error(ErrorKind::precondition, "cutoff needs lambda > 1");
  if (cfg.lambda > 0.5 * grid.x_max())
    throw Error(ErrorKind::headroom, "lambda exceeds x_max/2 = " + std::to_string(0.5 * grid.x_max()));
}

Eigen::MatrixXd cosine_fourier(const HalfLineGrid& grid) {
  const std::size_t n = grid.n;
  const double N = static_cast<double>(n);
  const double scale = std::sqrt(2.0 / N);
  Eigen::MatrixXd C(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      // reduce the phase mod 4n before the cosine to keep it accurate
      const std::size_t q = ((2 * j + 1) * (2 * k + 1)) % (8 * n);
      C(j, k) = scale * std::cos(pi * static_cast<double>(q) / (4.0 * N));
    }
  return C;
}

Eigen::MatrixXd dilation_op(double lambda, const HalfLineGrid& grid) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::domain, "dilation needs lambda > 0");
  const std::size_t n = grid.n;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    add_interpolation(grid.x(i) / lambda, 1.0, grid, [&](long j) -> double& { return S(i, j); });
  return S;
}

Eigen::MatrixXd scaling_rep(const LogGridFunction& f, const HalfLineGrid& grid) {
  const double edge = 0.5 * std::log(grid.x_max());
  if (f.log_a < -edge - 1e-12 || f.log_b > edge + 1e-12)
    throw Error(ErrorKind::support_overflow, "support of f leaves [x_max^-1/2, x_max^1/2]");
  std::vector<double> w(lambda_nodes), lam(lambda_nodes);
  const double du = (f.log_b - f.log_a) / static_cast<double>(lambda_nodes - 1);
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  for (std::size_t m = 0; m < lambda_nodes; ++m) {
    const double u = f.log_a + du * static_cast<double>(m);
    const cplx fv = f.at_log(u);
    if (std::abs(fv.imag()) > 1e-12 * std::max(peak, 1.0))
      throw Error(ErrorKind::precondition, "scaling_rep needs a real f");
    const double tw = (m == 0 || m + 1 == lambda_nodes) ? 0.5 : 1.0;
    w[m] = fv.real() * du * tw;
    lam[m] = std::exp(u);
  }
  const std::size_t n = grid.n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    for (std::size_t m = 0; m < lambda_nodes; ++m) {
      if (w[m] == 0.0) continue;
      add_interpolation(x / lam[m], w[m], grid, [&](long j) -> double& { return A(i, j); });
    }
  }
  return A;
}

double trace_RLambda(const Eigen::MatrixXd& theta_f, const Eigen::MatrixXd& C, const HalfLineGrid& grid,
                     const CutoffConfig& cfg) {
  validate(cfg, grid);
  const std::size_t p = cutoff_count(grid, cfg.lambda);
  // columns in P of Q = F P F
  Eigen::MatrixXd Qp = C.leftCols(p) * C.topLeftCorner(p, p).transpose();
  std::vector<double> rows(p);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < p; ++i) rows[i] = theta_f.row(i).dot(Qp.col(i));
  return kernels::pairwise_sum(rows.data(), p);
}

double trace_RLambda(const LogGridFunction& f, const HalfLineGrid& grid, const CutoffConfig& cfg) {
  validate(cfg, grid);
  if (f.log_a < -std::log(cfg.lambda) || f.log_b > std::log(cfg.lambda))
    throw Error(ErrorKind::precondition, "support of f must lie in (1/lambda, lambda)");
  return trace_RLambda(scaling_rep(f, grid), cosine_fourier(grid), grid, cfg);
}

TraceFit trace_fit(const LogGridFunction& f, const std::vector<double>& lambdas, const HalfLineGrid& grid) {
  if (lambdas.size() < 2) throw Error(ErrorKind::precondition, "trace fit needs at least two cutoffs");
  TraceFit r;
  r.lambdas = lambdas;
  for (double L : lambdas) {
    validate(CutoffConfig{L}, grid);
    if (f.log_a < -std::log(L) || f.log_b > std::log(L))
      throw Error(ErrorKind::precondition, "support of f must lie in (1/lambda, lambda)");
  }
  Eigen::MatrixXd A = scaling_rep(f, grid);
  Eigen::MatrixXd C = cosine_fourier(grid);
  for (double L : lambdas) r.traces.push_back(trace_RLambda(A, C, grid, CutoffConfig{L}));
  const std::size_t m = lambdas.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double x = 2.0 * std::log(lambdas[i]), y = r.traces[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double M = static_cast<double>(m);
  r.slope = (M * sxy - sx * sy) / (M * sxx - sx * sx);
  r.intercept = (sy - r.slope * sx) / M;
  double lo = r.traces[0], hi = r.traces[0];
  for (std::size_t i = 0; i < m; ++i) {
    double fit = r.slope * 2.0 * std::log(lambdas[i]) + r.intercept;
    r.max_residual = std::max(r.max_residual, std::abs(r.traces[i] - fit));
    lo = std::min(lo, r.traces[i]);
    hi = std::max(hi, r.traces[i]);
  }
  r.span = hi - lo;
  r.f_at_1 = f.at_log(0.0).real();
  r.archimedean = delta_inf_direct(f.times_power(0.5));
  return r;
}

std::vector<std::function<double(double)>> factorization_family() {
  return {
      [](double x) { return std::exp(-pi * x * x); },
      [](double x) { return std::exp(-2.0 * pi * x * x); },
      [](double x) { return std::exp(-pi * x * x / 2.0); },
      [](double x) { return x * x * std::exp(-pi * x * x); },
      // D(f) = x^2 f'' + 2x f' for f = exp(-pi x^2)
      [](double x) {
        double x2 = x * x;
        return (4.0 * pi * pi * x2 * x2 - 6.0 * pi * x2) * std::exp(-pi * x2);
      },
  };
}

FactorizationCheck fourier_factorization_check(const HalfLineGrid& grid, bool use_u) {
  const double u0 = -40.0, u1 = 6.0, du = 0.005;
  const double s0 = -60.0, s1 = 60.0, ds = 0.02;
  const std::size_t nu = static_cast<std::size_t>(std::lround((u1 - u0) / du)) + 1;
  const std::size_t ns = static_cast<std::size_t>(std::lround((s1 - s0) / ds)) + 1;
  std::vector<cplx> s(ns), us(ns);
  for (std::size_t j = 0; j < ns; ++j) {
    s[j] = s0 + ds * static_cast<double>(j);
    us[j] = use_u ? u_inf(s[j].real()) : cplx(1.0);
  }
  std::vector<std::size_t> check;
  for (std::size_t k = 0; k < grid.n; ++k)
    if (grid.x(k) >= 4.0 * grid.x_min() && grid.x(k) <= 0.25 * grid.x_max()) check.push_back(k);
  std::vector<cplx> logy(check.size());
  for (std::size_t i = 0; i < check.size(); ++i) logy[i] = std::log(grid.x(check[i]));

  Eigen::MatrixXd C = cosine_fourier(grid);
  FactorizationCheck r;
  for (const auto& xi : factorization_family()) {
    Eigen::VectorXd direct = C * grid.sample(xi);
    // F_C of w xi: int xi(e^u) e^{u/2} e^{-isu} du
    std::vector<cplx> H(nu);
    for (std::size_t k = 0; k < nu; ++k) {
      double u = u0 + du * static_cast<double>(k);
      H[k] = xi(std::exp(u)) * std::exp(0.5 * u);
    }
    std::vector<cplx> G(ns);
    kernels::parallel::mellin(H.data(), nu, u0, du, s.data(), ns, G.data());
    for (std::size_t j = 0; j < ns; ++j) G[j] *= us[j];
    // k(v) = (1/2pi) int K(s) v^{is} ds at v = 1/y, i.e. exp(-i s log y)
    std::vector<cplx> kv(check.size());
    kernels::parallel::mellin(G.data(), ns, s0, ds, logy.data(), logy.size(), kv.data());
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < check.size(); ++i) {
      const double y = grid.x(check[i]);
      const cplx comp = kv[i] / (2.0 * pi) / std::sqrt(y);
      err = std::max(err, std::abs(comp - direct(check[i])));
      scale = std::max(scale, std::abs(direct(check[i])));
    }
    r.per_vector.push_back(err / scale);
    r.defect = std::max(r.defect, err / scale);
  }
  return r;
}

CutoffIdentityCheck cutoff_identity_check(const LogGridFunction& h1, const LogGridFunction& h2, const HalfLineGrid& grid,
                                 const CutoffConfig& cfg, const SpectralGrid& sgrid) {
  validate(cfg, grid);
  const double L = std::log(cfg.lambda);
  if (h1.log_a + h2.log_a < -L || h1.log_b + h2.log_b > L)
    throw Error(ErrorKind::precondition, "support of h1 * h2 must lie in (1/lambda, lambda)");
  CutoffIdentityCheck r;
  // f = lambda^{-1/2} h on the scaling side
  Eigen::MatrixXd A1 = scaling_rep(h1.times_power(-0.5), grid);
  Eigen::MatrixXd A2 = scaling_rep(h2.times_power(-0.5), grid);
  Eigen::MatrixXd C = cosine_fourier(grid);
  const std::size_t p = cutoff_count(grid, cfg.lambda);
  // Tr(A1 Q P A2) = sum_{i in P} (A2 A1 Q)_{ii}
  Eigen::MatrixXd rowsP = A2.topRows(p) * A1;
  Eigen::MatrixXd Qp = C.leftCols(p) * C.topLeftCorner(p, p).transpose();
  std::vector<double> rows(p);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < p; ++i) rows[i] = rowsP.row(i).dot(Qp.col(i));
  r.scaling_side = kernels::pairwise_sum(rows.data(), p);

  QuantizedCalculus qc(sgrid);
  auto pts = sgrid.points();
  auto m1 = mellin_critical(h1, pts);
  auto m2 = mellin_critical(h2, pts);
  Vector hh(sgrid.n);
  for (std::size_t i = 0; i < sgrid.n; ++i) hh(i) = m1[i] * m2[i];
  r.qcalc_side = cutoff_trace(qc, hh, cfg.lambda).real();
  const double scale = std::max(std::abs(r.scaling_side), std::abs(r.qcalc_side));
  r.discrepancy = scale == 0.0 ? 0.0 : std::abs(r.scaling_side - r.qcalc_side) / scale;
  return r;
}

} // namespace zl

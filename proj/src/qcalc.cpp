#include "zetalab/qcalc.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "zetalab/kernels.hpp"

namespace zl {

namespace {

constexpr cplx I(0.0, 1.0);

// mirror index of i under reversal and the sign of i in the odd sector
inline std::size_t fold(std::size_t i, std::size_t n) { return i < n / 2 ? i : n - 1 - i; }
inline double odd_sign(std::size_t i, std::size_t n) { return i < n / 2 ? 1.0 : -1.0; }

// first column of the circulant Pi_[a,b]
std::vector<cplx> band_column(const SpectralGrid& grid, double a, double b, std::size_t* count) {
  const std::size_t n = grid.n;
  const double scale = 1.0 / (static_cast<double>(n) * grid.step());
  std::vector<long> ks;
  for (std::size_t m = 0; m < n; ++m) {
    long k = m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
    double x = static_cast<double>(k) * scale;
    if (x >= a && x <= b) ks.push_back(k);
  }
  if (count) *count = ks.size();
  std::vector<cplx> c(n);
#pragma omp parallel for schedule(static)
  for (std::size_t d = 0; d < n; ++d) {
    cplx acc = 0.0;
    for (long k : ks) {
      double ang = -2.0 * pi * static_cast<double>((k * static_cast<long>(d)) % static_cast<long>(n)) /
                   static_cast<double>(n);
      acc += cplx(std::cos(ang), std::sin(ang));
    }
    c[d] = acc / static_cast<double>(n);
  }
  return c;
}

Matrix circulant(const std::vector<cplx>& c) {
  const std::size_t n = c.size();
  Matrix M(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = c[(i + n - j) % n];
  return M;
}

void check_unimodular(const Vector& u) {
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (std::abs(std::abs(u(i)) - 1.0) > unimodular_tol)
      throw Error(ErrorKind::non_unimodular, "symbol is not unimodular at grid index " + std::to_string(i));
}

} // namespace

SpectralGrid::SpectralGrid(std::size_t n_, double s_max_) : s_max(s_max_), n(n_) {
  if (n < 64 || n % 2 != 0) throw Error(ErrorKind::precondition, "spectral grid needs even n >= 64");
  if (!(s_max > 0.0)) throw Error(ErrorKind::precondition, "spectral grid needs s_max > 0");
}

std::vector<double> SpectralGrid::points() const {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = point(i);
  return s;
}

KernelOperator identity_op(const SpectralGrid& grid) {
  return {grid, Matrix::Identity(grid.n, grid.n)};
}

KernelOperator multiplication_op(const SpectralGrid& grid, const Vector& f) {
  return {grid, f.asDiagonal().toDenseMatrix()};
}

KernelOperator pv_op(const SpectralGrid& grid) {
  const std::size_t n = grid.n;
  Matrix H = Matrix::Zero(n, n);
  // (1/(i pi)) h / (s_i - s_j) with s_i - s_j = (i - j) h
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) H(i, j) = -I / (pi * (static_cast<double>(i) - static_cast<double>(j)));
  return {grid, H};
}

namespace {

// G real antisymmetric with F = -i G. The PV matrix is -i A with A real
// antisymmetric and anti-commuting with the reversal J, so in the J-even/odd
// basis A = [0 B; -B^T 0] and sign(-i A) = -i [0 U V^T; -V U^T 0].
Eigen::MatrixXd sign_generator(std::size_t n) {
  const std::size_t m = n / 2;
  auto a = [](long d) { return d == 0 ? 0.0 : 1.0 / (pi * static_cast<double>(d)); };
  Eigen::MatrixXd B(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      long ii = static_cast<long>(i), jj = static_cast<long>(j), r = static_cast<long>(n) - 1;
      B(i, j) = 0.5 * (a(ii - jj) - a(ii - (r - jj)) + a((r - ii) - jj) - a((r - ii) - (r - jj)));
    }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd M1 = svd.matrixU() * svd.matrixV().transpose();
  Eigen::MatrixXd G(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a_ = 0; a_ < n; ++a_) {
      std::size_t ka = fold(a_, n), kb = fold(b, n);
      G(a_, b) = 0.5 * (M1(ka, kb) * odd_sign(b, n) - odd_sign(a_, n) * M1(kb, ka));
    }
  return G;
}

} // namespace

KernelOperator hilbert_op(const SpectralGrid& grid) {
  Eigen::MatrixXd G = sign_generator(grid.n);
  return {grid, -I * G.cast<cplx>()};
}

KernelOperator qdiff(const KernelOperator& F, const Vector& f) {
  const std::size_t n = F.grid.n;
  Matrix D(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) D(i, j) = F.matrix(i, j) * (f(j) - f(i));
  return {F.grid, D};
}

KernelOperator d_graded(const KernelOperator& F, const KernelOperator& omega, int degree) {
  const double sgn = (degree % 2 == 0) ? 1.0 : -1.0;
  return {F.grid, F.matrix * omega.matrix - sgn * (omega.matrix * F.matrix)};
}

KernelOperator band_projection(const SpectralGrid& grid, double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::precondition, "band projection needs a < b");
  return {grid, circulant(band_column(grid, a, b, nullptr))};
}

cplx Symbol::operator()(double s) const {
  switch (kind) {
    case Kind::constant: return std::exp(I * phase);
    case Kind::blaschke: return (s - I) / (s + I);
    case Kind::uinf: return u_inf(s);
    case Kind::up: return u_p(s, p);
  }
  return 1.0;
}

cplx Symbol::dlog(double s) const {
  switch (kind) {
    case Kind::constant: return 0.0;
    case Kind::blaschke: return 1.0 / (s - I) - 1.0 / (s + I);
    case Kind::uinf: return dlog_u(s, Place::inf());
    case Kind::up: return dlog_u(s, Place::prime(p));
  }
  return 0.0;
}

std::string Symbol::name() const {
  switch (kind) {
    case Kind::constant: return "const";
    case Kind::blaschke: return "blaschke";
    case Kind::uinf: return "uinf";
    case Kind::up: return "up:p=" + std::to_string(p);
  }
  return "";
}

Symbol parse_symbol(const std::string& spec) {
  Symbol u;
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto value_of = [&](const std::string& key) -> double {
    if (rest.rfind(key + "=", 0) != 0 || rest.find(',') != std::string::npos)
      throw Error(ErrorKind::parse, "bad symbol parameters: " + spec);
    try {
      std::size_t used = 0;
      double v = std::stod(rest.substr(key.size() + 1), &used);
      if (used != rest.size() - key.size() - 1) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "bad symbol parameters: " + spec);
    }
  };
  if (head == "const") {
    u.kind = Symbol::Kind::constant;
    if (!rest.empty()) u.phase = value_of("phase");
  } else if (head == "blaschke" && rest.empty()) {
    u.kind = Symbol::Kind::blaschke;
  } else if (head == "uinf" && rest.empty()) {
    u.kind = Symbol::Kind::uinf;
  } else if (head == "up") {
    u.kind = Symbol::Kind::up;
    double p = value_of("p");
    if (p != std::floor(p) || !is_prime(static_cast<long>(p)))
      throw Error(ErrorKind::parse, "up needs a prime p: " + spec);
    u.p = static_cast<long>(p);
  } else {
    throw Error(ErrorKind::parse, "unknown symbol: " + spec);
  }
  return u;
}

Vector symbol_values(const Symbol& u, const SpectralGrid& grid) {
  Vector v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v(i) = u(grid.point(i));
  return v;
}

Matrix resolved_subspace(const SpectralGrid& grid, double bandwidth, double threshold) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < grid.n; ++i)
    if (std::abs(grid.point(i)) <= 0.5 * grid.s_max) idx.push_back(i);
  auto c = band_column(grid, -bandwidth, bandwidth, nullptr);
  const std::size_t n = grid.n, m = idx.size();
  // symmetric band: the circulant is real symmetric
  Eigen::MatrixXd C(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) C(i, j) = c[(idx[i] + n - idx[j]) % n].real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > threshold) keep.push_back(k);
  Matrix Q = Matrix::Zero(n, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t i = 0; i < m; ++i) Q(idx[i], k) = es.eigenvectors()(i, keep[k]);
  return Q;
}

QuantizedCalculus::QuantizedCalculus(const SpectralGrid& grid) : grid_(grid) {
  G_ = sign_generator(grid.n);
  F_ = {grid, -I * G_.cast<cplx>()};
  P_ = 0.5 * (Matrix::Identity(grid.n, grid.n) + F_.matrix);
  Q_ = resolved_subspace(grid);
}

Matrix QuantizedCalculus::apply_P(const Matrix& X) const {
  Eigen::MatrixXd re = G_ * X.real();
  Eigen::MatrixXd im = G_ * X.imag();
  // P = (1 - i G)/2
  Matrix GX(X.rows(), X.cols());
  GX.real() = re;
  GX.imag() = im;
  return 0.5 * (X - I * GX);
}

KernelOperator QuantizedCalculus::dlog_op(const Vector& u) const {
  const std::size_t n = grid_.n;
  Matrix D(n, n);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) D(i, j) = F_.matrix(i, j) * (std::conj(u(i)) * u(j) - 1.0);
  return {grid_, D};
}

KernelOperator QuantizedCalculus::li_operator(const Vector& u) const {
  check_unimodular(u);
  Matrix UP = u.asDiagonal() * P_;
  Matrix Y = UP - apply_P(UP);
  Matrix T = apply_P(u.conjugate().asDiagonal() * Y);
  return {grid_, T};
}

double operator_norm(const Matrix& X, double tol, int max_iter) {
  if (X.size() == 0) return 0.0;
  Matrix G = X.adjoint() * X;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  Vector v(G.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(nd(rng), nd(rng));
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = G * v;
    double nl = w.norm();
    if (nl == 0.0) return 0.0;
    v = w / nl;
    if (std::abs(nl - lam) <= tol * nl) {
      lam = nl;
      break;
    }
    lam = nl;
  }
  return std::sqrt(lam);
}

InnerDiagnostics inner_diagnostics(const QuantizedCalculus& qc, const Vector& u) {
  check_unimodular(u);
  const Matrix& Q = qc.resolved();
  Vector ub = u.conjugate();
  Matrix PQ = qc.apply_P(Q);
  Matrix UPQ = u.asDiagonal() * PQ;
  Matrix Y = UPQ - qc.apply_P(UPQ);
  Matrix TQ = qc.apply_P(ub.asDiagonal() * Y);
  Matrix UQ = u.asDiagonal() * Q;
  Matrix halfQ = ub.asDiagonal() * qc.apply_P(UQ) - PQ;
  InnerDiagnostics r;
  r.resolved_rank = static_cast<std::size_t>(Q.cols());
  r.c1 = operator_norm(TQ + halfQ);
  Matrix S = Q.adjoint() * (2.0 * halfQ);
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  r.c2 = std::max(0.0, es.eigenvalues().maxCoeff());
  Matrix Z = Q - PQ;
  r.c3 = operator_norm(qc.apply_P(u.asDiagonal() * Z));
  return r;
}

InnerDiagnostics inner_diagnostics(const QuantizedCalculus& qc, const Symbol& u) {
  return inner_diagnostics(qc, symbol_values(u, qc.grid()));
}

TraceProductCheck trace_product_check(std::uint64_t seed, int trials, std::size_t n) {
  TraceProductCheck r;
  r.trials = trials;
  r.min_trace = std::numeric_limits<double>::infinity();
  std::normal_distribution<double> nd;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    // random rank keeps singular pairs in the sample
    std::size_t rank = 1 + rng() % n;
    Matrix X(n, rank), Y(n, rank);
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      for (Eigen::Index i = 0; i < X.rows(); ++i) {
        X(i, j) = cplx(nd(rng), nd(rng));
        Y(i, j) = cplx(nd(rng), nd(rng));
      }
    Matrix A = X * X.adjoint(), B = Y * Y.adjoint();
    cplx tr = kernels::parallel::trace_product(A.data(), B.data(), n);
    r.min_trace = std::min(r.min_trace, tr.real());
  }
  r.pass = r.min_trace >= -1e-12;
  return r;
}

DiagonalTrace diagonal_trace(const QuantizedCalculus& qc, const Vector& a, const Vector& b,
                             const Symbol& u, double band) {
  const SpectralGrid& g = qc.grid();
  Vector uv = symbol_values(u, g);
  Matrix X = a.asDiagonal() * qc.dlog_op(uv).matrix * b.asDiagonal();
  Matrix Pi = band_projection(g, -band, band).matrix;
  DiagonalTrace r;
  r.trace = kernels::parallel::trace_product(Pi.data(), X.data(), g.n);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) acc += a(i) * b(i) * u.dlog(g.point(i));
  r.reference = I / pi * acc * g.step();
  return r;
}

cplx cutoff_trace(const QuantizedCalculus& qc, const Vector& hhat, double lambda, double band) {
  if (!(lambda > 1.0)) throw Error(ErrorKind::precondition, "cutoff needs lambda > 1");
  const SpectralGrid& g = qc.grid();
  const double c = std::log(lambda) / pi;
  Vector u = symbol_values(Symbol{Symbol::Kind::uinf}, g);
  Matrix half = 0.5 * qc.dlog_op(u).matrix;
  Matrix X = hhat.asDiagonal() * half;
  Matrix Pi = band_projection(g, -band, c).matrix;
  cplx t1 = kernels::parallel::trace_product(Pi.data(), X.data(), g.n);
  std::size_t count = 0;
  band_column(g, 0.0, c, &count);
  const double diag0 = static_cast<double>(count) / static_cast<double>(g.n);
  cplx t2 = hhat.sum() * diag0;
  return t1 + t2;
}

} // namespace zl

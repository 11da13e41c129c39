#include "zetalab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalab/explicit_formula.hpp"
#include "zetalab/kernels.hpp"
#include "zetalab/poisson_sonine.hpp"
#include "zetalab/qcalc.hpp"
#include "zetalab/scaling_trace.hpp"
#include "zetalab/semiclassical.hpp"

namespace zl::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, csv };

class Report {
public:
  explicit Report(const std::string& command) {
    config("version", version());
    config("command", command);
  }
  void config(const std::string& k, json v) { config_[k] = std::move(v); }
  void set(const std::string& k, json v) { values_[k] = std::move(v); }
  void columns(std::vector<std::string> header) { header_ = std::move(header); }
  void row(std::vector<json> r) { rows_.push_back(std::move(r)); }

  void write(std::ostream& os, Format f) const {
    if (f == Format::json) {
      json j = config_;
      for (const auto& [k, v] : values_.items()) j[k] = v;
      for (std::size_t c = 0; c < header_.size(); ++c) {
        json col = json::array();
        for (const auto& r : rows_) col.push_back(r[c]);
        j[header_[c]] = col;
      }
      os << j.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : config_.items()) os << "# " << k << "=" << cell(v) << "\n";
    if (header_.empty()) {
      bool first = true;
      for (const auto& [k, v] : values_.items()) os << (first ? "" : ",") << k, first = false;
      os << "\n";
      first = true;
      for (const auto& [k, v] : values_.items()) os << (first ? "" : ",") << cell(v), first = false;
      os << "\n";
      return;
    }
    for (const auto& [k, v] : values_.items()) os << "# " << k << "=" << cell(v) << "\n";
    for (std::size_t c = 0; c < header_.size(); ++c) os << (c ? "," : "") << header_[c];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << cell(r[c]);
      os << "\n";
    }
  }

private:
  static std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  json config_ = json::object();
  json values_ = json::object();
  std::vector<std::string> header_;
  std::vector<std::vector<json>> rows_;
};

struct FormatFlags {
  bool json = false;
  bool csv = false;
  Format format() const { return csv ? Format::csv : Format::json; }
};

void add_format(CLI::App* sub, FormatFlags& f) {
  auto* j = sub->add_flag("--json", f.json, "JSON report (default)");
  auto* c = sub->add_flag("--csv", f.csv, "CSV report");
  j->excludes(c);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::parse, "bad number '" + item + "' in list");
    v.push_back(x);
  }
  if (v.empty()) throw Error(ErrorKind::parse, "empty list");
  return v;
}

std::vector<Place> parse_places(const std::string& s) {
  std::vector<Place> S;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      S.push_back(Place::inf());
      continue;
    }
    std::size_t used = 0;
    long p = 0;
    try {
      p = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::parse, "bad place '" + item + "'");
    S.push_back(Place::prime(p));
  }
  return S;
}

std::string places_string(const std::vector<Place>& S) {
  std::string s;
  for (const auto& v : S) s += (s.empty() ? "" : ",") + v.name();
  return s;
}

ZeroTable zeros_for(const std::string& path, double height, std::ostream& err) {
  if (!path.empty()) return ingest_zero_table(path, err);
  return find_zeros(height);
}

SelftestItem item(const std::string& name, double value, double tol) { return {name, value, tol, value <= tol}; }

} // namespace

ZeroTable ingest_zero_table(const std::string& path, std::ostream& err) {
  ZeroTable z = read_zero_table_file(path);
  if (z.complete_to >= 14.0) {
    const double est = theta_count_estimate(z.complete_to);
    const double got = static_cast<double>(z.count_below(z.complete_to));
    if (std::abs(got - est) > 2.0)
      err << "warning: zero table " << path << " has " << got << " ordinates below " << z.complete_to
          << ", theta estimate " << est << "\n";
  }
  return z;
}

std::vector<SelftestItem> selftest(std::uint64_t seed) {
  std::vector<SelftestItem> r;

  r.push_back(item("phi_20", std::abs(phi(cplx(20.0, 0.0)).real() - 26.45618688), 1e-6));
  double unim = 0.0;
  for (int k = 0; k < 200; ++k) unim = std::max(unim, std::abs(std::abs(u_inf(-50.0 + 0.5 * k)) - 1.0));
  r.push_back(item("u_inf_unimodular", unim, 1e-12));
  ZeroTable z = find_zeros(50.0);
  r.push_back(item("zero_count_50", std::abs(static_cast<double>(z.ordinates.size()) - 10.0), 0.0));

  auto h1 = bump(0.8, 1.3), h2 = bump(0.7, 1.5);
  r.push_back(item("mconvolve_integral",
                   std::abs(integral_dstar(mconvolve(h1, h2)) - integral_dstar(h1) * integral_dstar(h2)), 1e-9));

  auto h = bump(1.0 / 3.0, 3.0);
  r.push_back(item("delta_2_two_paths", std::abs(delta_finite(h, 2) - delta_spectral(h, Place::prime(2))), 1e-6));

  {
    std::vector<cplx> H(2001), s(64), a(64), b(64);
    for (std::size_t k = 0; k < H.size(); ++k) H[k] = std::exp(-0.5 * std::pow(-4.0 + 0.004 * k, 2));
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = 0.3 * j;
    kernels::serial::mellin(H.data(), H.size(), -4.0, 0.004, s.data(), s.size(), a.data());
    kernels::parallel::mellin(H.data(), H.size(), -4.0, 0.004, s.data(), s.size(), b.data());
    double d = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    r.push_back(item("mellin_serial_parallel", d, 1e-12));
  }

  {
    QuantizedCalculus qc(SpectralGrid(256, 40.0));
    const auto& F = qc.F().matrix;
    const auto n = F.rows();
    r.push_back(item("F_squared", (F * F - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12));
    Vector f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = 1.0 / (1.0 + std::pow(qc.grid().point(i), 2));
    auto df = qc.qdiff(f);
    r.push_back(item("d_squared", d_graded(qc.F(), df, 1).matrix.cwiseAbs().maxCoeff(), 1e-12));
    auto tp = trace_product_check(seed, 20, 32);
    r.push_back(item("trace_product", tp.pass ? 0.0 : 1.0, 0.0));
  }

  {
    HalfLineGrid g(1024);
    Eigen::MatrixXd C = cosine_fourier(g);
    const auto n = static_cast<Eigen::Index>(g.n);
    r.push_back(item("dct_orthogonal", (C * C - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12));
  }

  auto fam = kahane_family(40.0, 4097);
  r.push_back(item("kahane_conditions", std::max(std::abs(two_conditions(fam[0]).value_at_0),
                                                std::abs(two_conditions(fam[0]).integral)),
                   condition_tol));
  r.push_back(item("poisson_identity", poisson_identity_check(fam[0]), 1e-8));
  r.push_back(item("monoid_2_3", monoid_sum_check({2, 3}, {1.0, 5.0}), 1e-4));

  r.push_back(item("lambda_independence", lambda_independence(100.0, {4.0, 16.0, 64.0}), 1e-8));
  r.push_back(item("phi_jacobian", jacobian_check(SymplecticMap::phi, 4.0, seed), 1e-8));
  auto mc = area_monte_carlo(Region::box, {60.0, 4.0}, seed, 200000);
  r.push_back(item("box_monte_carlo_sigmas", std::abs(mc.area - area_box({60.0, 4.0})) / mc.std_error, 4.0));
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zetalab: explicit formula and quantized calculus numerics", "zetalab"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  // zeros
  auto* zeros = app.add_subcommand("zeros", "ordinates of zeros on the critical line");
  double z_tmax = 100.0, z_step = 0.05;
  std::string z_out;
  FormatFlags z_fmt;
  zeros->add_option("--tmax", z_tmax, "height")->required()->check(CLI::PositiveNumber);
  zeros->add_option("--step", z_step, "scan step")->check(CLI::PositiveNumber);
  zeros->add_option("--out", z_out, "write the zero table to this file");
  add_format(zeros, z_fmt);

  // ef balance / ef weil
  auto* ef = app.add_subcommand("ef", "explicit formula");
  ef->require_subcommand(1);
  auto* bal = ef->add_subcommand("balance", "zero side against pole and local terms");
  std::string b_h, b_zeros, b_primes = "auto";
  double b_height = 100.0;
  std::size_t b_grid = default_grid;
  FormatFlags b_fmt;
  bal->add_option("--h", b_h, "test function spec")->required();
  bal->add_option("--zeros", b_zeros, "zero table file");
  bal->add_option("--height", b_height, "zero truncation height")->check(CLI::PositiveNumber);
  bal->add_option("--primes", b_primes, "auto or a comma list");
  bal->add_option("--grid", b_grid, "log grid size")->check(CLI::Range(64, 1 << 20));
  add_format(bal, b_fmt);

  auto* efw = ef->add_subcommand("weil", "seeded positivity trials");
  int w_q = 2, w_trials = 20;
  std::uint64_t w_seed = 42;
  std::string w_zeros;
  const double w_height = 100.0;
  FormatFlags w_fmt;
  efw->add_option("--q", w_q, "largest prime")->check(CLI::Range(2, 97));
  efw->add_option("--trials", w_trials, "trial count")->check(CLI::Range(1, 10000));
  efw->add_option("--seed", w_seed, "seed");
  efw->add_option("--zeros", w_zeros, "zero table file");
  add_format(efw, w_fmt);

  // weil
  auto* weil = app.add_subcommand("weil", "Weil functional of one test function");
  std::string wf_h, wf_places = "auto";
  FormatFlags wf_fmt;
  weil->add_option("--h", wf_h, "test function spec")->required();
  weil->add_option("--places", wf_places, "auto or a list such as inf,2,3");
  add_format(weil, wf_fmt);

  // trace
  auto* trace = app.add_subcommand("trace", "cutoff trace asymptotics");
  std::string t_lambda = "4,8,16", t_f = "bump:center=1,width=0.2";
  std::size_t t_n = 4096;
  FormatFlags t_fmt;
  trace->add_option("--lambda", t_lambda, "cutoff list");
  trace->add_option("--n", t_n, "half-line grid size")->check(CLI::Range(512, 16384));
  trace->add_option("--f", t_f, "test function spec");
  add_format(trace, t_fmt);

  // qcalc inner-test
  auto* qcalc = app.add_subcommand("qcalc", "quantized calculus");
  qcalc->require_subcommand(1);
  auto* inner = qcalc->add_subcommand("inner-test", "inner-function diagnostics of a symbol");
  std::string q_symbol = "blaschke";
  std::size_t q_n = 1024;
  double q_smax = 40.0;
  FormatFlags q_fmt;
  inner->add_option("--symbol", q_symbol, "const | blaschke | uinf | up:p=P");
  inner->add_option("--n", q_n, "spectral grid size")->check(CLI::Range(64, 4096));
  inner->add_option("--smax", q_smax, "spectral window")->check(CLI::PositiveNumber);
  add_format(inner, q_fmt);

  // sonine
  auto* sonine = app.add_subcommand("sonine", "Sonine function from a bump");
  double s_delta = 0.2, s_xmax = 80.0;
  std::size_t s_n = 16385;
  FormatFlags s_fmt;
  sonine->add_option("--delta", s_delta, "bump half width");
  sonine->add_option("--n", s_n, "grid size (made odd)")->check(CLI::Range(65, 1 << 20));
  sonine->add_option("--xmax", s_xmax, "grid half length")->check(CLI::PositiveNumber);
  add_format(sonine, s_fmt);

  // semiclassical
  auto* semi = app.add_subcommand("semiclassical", "semiclassical zero count");
  double c_emin = 30.0, c_emax = 100.0, c_estep = 1.0, c_lambda = 16.0;
  std::string c_zeros;
  FormatFlags c_fmt;
  semi->add_option("--emin", c_emin, "smallest energy")->check(CLI::PositiveNumber);
  semi->add_option("--emax", c_emax, "largest energy")->check(CLI::PositiveNumber);
  semi->add_option("--estep", c_estep, "energy step")->check(CLI::PositiveNumber);
  semi->add_option("--lambda", c_lambda, "box cutoff for the accounting");
  semi->add_option("--zeros", c_zeros, "zero table file");
  add_format(semi, c_fmt);

  // selftest
  auto* self = app.add_subcommand("selftest", "invariant suite of every module");
  std::uint64_t st_seed = 42;
  FormatFlags st_fmt;
  self->add_option("--seed", st_seed, "seed");
  add_format(self, st_fmt);

  std::vector<std::string> argv_store = {"zetalab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_validation;
  }

  try {
    if (zeros->parsed()) {
      ZeroTable z = find_zeros(z_tmax, z_step);
      Report rep("zeros");
      rep.config("tmax", z_tmax);
      rep.config("step", z_step);
      rep.config("out", z_out);
      rep.set("count", z.ordinates.size());
      rep.set("complete_to", z.complete_to);
      rep.set("theta_estimate", theta_count_estimate(z_tmax));
      if (!z_out.empty()) {
        std::ofstream f(z_out);
        if (!f) throw Error(ErrorKind::precondition, "cannot write " + z_out);
        write_zero_table(z, f);
      } else {
        rep.columns({"ordinate"});
        for (double g : z.ordinates) rep.row({g});
      }
      rep.write(out, z_fmt.format());
      return exit_ok;
    }

    if (bal->parsed()) {
      auto h = parse_testfn(b_h, b_grid);
      std::vector<Place> S;
      if (b_primes == "auto") {
        S = relevant_places(h, true);
      } else {
        S = parse_places("inf," + b_primes);
      }
      ZeroTable z = zeros_for(b_zeros, b_height, err);
      auto r = balance(h, z, S, b_height);
      Report rep("ef balance");
      rep.config("h", b_h);
      rep.config("zeros", b_zeros.empty() ? "computed" : b_zeros);
      rep.config("height", b_height);
      rep.config("primes", b_primes);
      rep.config("places", places_string(S));
      rep.config("grid", b_grid);
      rep.set("zero_side", r.zero_side);
      rep.set("pole_side", r.pole_side);
      rep.set("local_sum", r.local_sum);
      rep.set("residual", r.residual);
      rep.set("truncation_height", r.truncation_height);
      rep.set("tail_bound", r.tail_bound);
      for (const auto& t : r.local_terms) {
        rep.set("local_" + t.place.name() + "_direct", t.direct_value);
        rep.set("local_" + t.place.name() + "_spectral", t.spectral_value);
        rep.set("local_" + t.place.name() + "_discrepancy", t.discrepancy);
      }
      rep.write(out, b_fmt.format());
      return exit_ok;
    }

    if (efw->parsed()) {
      ZeroTable z = zeros_for(w_zeros, w_height, err);
      auto r = positivity_experiment(w_q, w_trials, w_seed, z);
      Report rep("ef weil");
      rep.config("q", w_q);
      rep.config("trials", w_trials);
      rep.config("seed", w_seed);
      rep.config("zeros", w_zeros.empty() ? "computed" : w_zeros);
      rep.config("height", w_height);
      rep.config("places", places_string(r.places));
      rep.set("h1_log_half_width", r.h1_log_half_width);
      rep.set("min_weil", r.min_weil);
      rep.set("max_weil", r.max_weil);
      rep.set("sign_violations", r.sign_violations);
      rep.set("disagreements", r.disagreements);
      rep.columns({"trial", "seed", "log_center", "weil", "zero_side", "tail_bound", "agreement", "agrees"});
      for (const auto& t : r.records)
        rep.row({t.trial, t.seed, t.log_center, t.weil, t.zero_side, t.tail_bound, t.agreement, t.agrees});
      rep.write(out, w_fmt.format());
      return exit_ok;
    }

    if (weil->parsed()) {
      auto h = parse_testfn(wf_h);
      auto S = wf_places == "auto" ? relevant_places(h, true) : parse_places(wf_places);
      Report rep("weil");
      rep.config("h", wf_h);
      rep.config("places", places_string(S));
      rep.set("weil", weil_functional(h, S));
      rep.write(out, wf_fmt.format());
      return exit_ok;
    }

    if (trace->parsed()) {
      auto f = parse_testfn(t_f);
      auto lambdas = parse_list(t_lambda);
      auto fit = trace_fit(f, lambdas, HalfLineGrid(t_n));
      Report rep("trace");
      rep.config("lambda", t_lambda);
      rep.config("n", t_n);
      rep.config("f", t_f);
      rep.set("slope", fit.slope);
      rep.set("intercept", fit.intercept);
      rep.set("f_at_1", fit.f_at_1);
      rep.set("archimedean", fit.archimedean);
      rep.set("max_residual", fit.max_residual);
      rep.set("span", fit.span);
      rep.columns({"lambda", "trace", "fit", "residual"});
      for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
        const double v = fit.slope * 2.0 * std::log(fit.lambdas[i]) + fit.intercept;
        rep.row({fit.lambdas[i], fit.traces[i], v, fit.traces[i] - v});
      }
      rep.write(out, t_fmt.format());
      return exit_ok;
    }

    if (inner->parsed()) {
      auto u = parse_symbol(q_symbol);
      QuantizedCalculus qc(SpectralGrid(q_n, q_smax));
      auto d = inner_diagnostics(qc, u);
      constexpr double inner_tol = 5e-2;
      Report rep("qcalc inner-test");
      rep.config("symbol", u.name());
      rep.config("n", q_n);
      rep.config("smax", q_smax);
      rep.config("tol", inner_tol);
      rep.set("c1", d.c1);
      rep.set("c2", d.c2);
      rep.set("c3", d.c3);
      rep.set("resolved_rank", d.resolved_rank);
      rep.set("inner", d.c1 < inner_tol && d.c2 < inner_tol && d.c3 < inner_tol);
      rep.write(out, q_fmt.format());
      return exit_ok;
    }

    if (sonine->parsed()) {
      auto r = sonine_construct(s_delta, s_n, s_xmax);
      Report rep("sonine");
      rep.config("delta", s_delta);
      rep.config("n", r.f.size());
      rep.config("xmax", s_xmax);
      rep.set("position_radius", r.position_radius);
      rep.set("position_tol", sonine_position_tol);
      rep.set("fourier_radius", r.fourier_radius);
      rep.set("fourier_tol", sonine_fourier_tol);
      rep.set("boundary", r.boundary);
      rep.columns({"x", "f"});
      for (std::size_t k = r.f.center(); k < r.f.size(); ++k) rep.row({r.f.node(k), r.f.samples[k]});
      rep.write(out, s_fmt.format());
      return exit_ok;
    }

    if (semi->parsed()) {
      if (c_emin > c_emax) throw Error(ErrorKind::precondition, "emin > emax");
      ZeroTable z = zeros_for(c_zeros, c_emax, err);
      Report rep("semiclassical");
      rep.config("emin", c_emin);
      rep.config("emax", c_emax);
      rep.config("estep", c_estep);
      rep.config("lambda", c_lambda);
      rep.config("zeros", c_zeros.empty() ? "computed" : c_zeros);
      rep.columns({"E", "pred", "actual", "diff"});
      double worst = 0.0, lam = 0.0;
      const auto steps = static_cast<long>(std::floor((c_emax - c_emin) / c_estep + 1e-9));
      for (long k = 0; k <= steps; ++k) {
        const double E = c_emin + c_estep * static_cast<double>(k);
        auto c = compare_to_zeros(E, z);
        worst = std::max(worst, std::abs(c.diff));
        rep.row({c.E, c.pred, c.actual, c.diff});
        if (E >= 2.0 * pi && E / (2.0 * pi) <= c_lambda * c_lambda)
          lam = std::max(lam, lambda_independence(E, {c_lambda}));
      }
      rep.set("max_abs_diff", worst);
      rep.set("lambda_independence", lam);
      rep.write(out, c_fmt.format());
      return exit_ok;
    }

    if (self->parsed()) {
      auto items = selftest(st_seed);
      Report rep("selftest");
      rep.config("seed", st_seed);
      int failed = 0;
      rep.columns({"check", "value", "tol", "pass"});
      for (const auto& it : items) {
        rep.row({it.name, it.value, it.tol, it.pass});
        if (!it.pass) ++failed;
      }
      rep.set("checks", items.size());
      rep.set("failed", failed);
      rep.write(out, st_fmt.format());
      return failed ? exit_tolerance : exit_ok;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_validation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

} // namespace zl::cli

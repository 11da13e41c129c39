#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zetalab/common.hpp"

namespace zl {

bool is_prime(long p);
std::vector<long> primes_below(long q);

struct Place {
  enum class Kind { archimedean, finite };
  Kind kind = Kind::archimedean;
  long p = 0;

  static Place inf() { return {}; }
  static Place prime(long p);
  bool is_inf() const { return kind == Kind::archimedean; }
  std::string name() const;
  bool operator==(const Place&) const = default;
};

cplx log_gamma(cplx z);
cplx digamma(cplx z);

struct ZetaConfig {
  double height_bound = 120.0;
  double min_real = -10.0;
  int bernoulli_terms = 12;
  int min_terms = 20;
};

cplx zeta_em(cplx s, const ZetaConfig& cfg = {});
// chi with zeta(s) = chi(s) zeta(1-s)
cplx zeta_chi(cplx s);

double theta_rs(double t);
double theta_prime(double t);
double hardy_z(double t);

cplx phi(cplx z);
cplx u_inf(double s);
cplx u_p(double s, long p);
cplx u_place(double s, const Place& v);
cplx dlog_u(double s, const Place& v);

struct ZeroTable {
  std::vector<double> ordinates;
  double complete_to = 0.0;
  int precision = 9;

  std::size_t count_below(double T) const;
  // throws on non-monotone or out-of-range entries
  void validate() const;
};

// theta(T)/pi + 1
double theta_count_estimate(double T);

ZeroTable find_zeros(double t_max, double step = 0.05);

void write_zero_table(const ZeroTable& z, std::ostream& os);
// parse errors carry the line number
ZeroTable read_zero_table(std::istream& is);
ZeroTable read_zero_table_file(const std::string& path);

} // namespace zl

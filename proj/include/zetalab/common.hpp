#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zl {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

enum class ErrorKind {
  domain,
  pole,
  precondition,
  decay_cutoff,
  missed_zero,
  insufficient_table,
  parse,
  monotonicity,
  degenerate,
  support_overflow,
  headroom,
  non_unimodular,
  condition_violation,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

const char* version();

} // namespace zl

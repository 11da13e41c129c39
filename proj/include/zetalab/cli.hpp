#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zetalab/specfun.hpp"

namespace zl::cli {

// exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_tolerance = 2;

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// validated table; warns on err when the count is far from the theta estimate
ZeroTable ingest_zero_table(const std::string& path, std::ostream& err);

struct SelftestItem {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// quick invariant suite over every module
std::vector<SelftestItem> selftest(std::uint64_t seed);

} // namespace zl::cli

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lcs {

/// Input outside the mathematical domain of an operation (negative amplitude,
/// unnormalized state, degenerate grid, vacuum Mandel Q, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel gave up before reaching its tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Residual estimate at the point the iteration stopped.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Root bracket without a sign change; carries both endpoint values.
class bracket_error : public domain_error {
 public:
  bracket_error(const std::string& what, double f_lo, double f_hi)
      : domain_error(what), f_lo_(f_lo), f_hi_(f_hi) {}

  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double f_lo_;
  double f_hi_;
};

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

}  // namespace lcs

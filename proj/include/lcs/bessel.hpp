#pragma once

// Integer-order Bessel functions of the first kind, J_0(y)..J_N(y), by Miller's
// downward recurrence normalized with the Neumann sum J_0 + 2*sum J_2k = 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lcs/error.hpp"

namespace lcs {

struct BesselTable {
  double argument = 0.0;
  std::vector<double> values;  // values[n] = J_n(argument)

  int order_max() const noexcept { return static_cast<int>(values.size()) - 1; }
  double operator[](std::size_t n) const noexcept { return values[n]; }
};

/// Order at which the downward recurrence is seeded for a table up to
/// `order_max` at argument `y`.
inline int miller_start_order(int order_max, double y) {
  const int buffer = static_cast<int>(std::ceil(1.2 * y) + 15.0 * std::ceil(std::cbrt(y)));
  return order_max + std::max(20, buffer);
}

inline BesselTable bessel_table(double y, int order_max) {
  if (!std::isfinite(y) || y < 0.0)
    throw domain_error("bessel_table: argument y must be finite and >= 0, got " + detail::fmt_num(y));
  if (order_max < 0)
    throw domain_error("bessel_table: order_max must be >= 0, got " + std::to_string(order_max));

  BesselTable table;
  table.argument = y;
  table.values.assign(static_cast<std::size_t>(order_max) + 1, 0.0);

  if (y == 0.0) {
    table.values[0] = 1.0;
    return table;
  }

  // Below this the leading power-series term is exact in double precision and
  // 2k/y in the recurrence could overflow.
  if (y < 1e-30) {
    double term = 1.0;
    table.values[0] = 1.0;
    for (int n = 1; n <= order_max; ++n) {
      term *= 0.5 * y / n;
      table.values[n] = term;
    }
    return table;
  }

  const int start = miller_start_order(order_max, y);
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start] = 1e-300;
  constexpr double big = 1e250;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k / y) * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > big) {
      for (int j = k - 1; j <= start; ++j) f[j] /= big;
    }
  }

  double neumann = f[0];
  for (int k = 2; k <= start; k += 2) neumann += 2.0 * f[k];

  for (int n = 0; n <= order_max; ++n) table.values[n] = f[n] / neumann;
  return table;
}

namespace detail {

// sum_{n>=1} n J_n(y)^2, stopping after five consecutive terms below 1e-16.
inline double weighted_bessel_square_sum(double y) {
  int order = static_cast<int>(std::ceil(y + 15.0 * std::cbrt(y))) + 40;
  for (;;) {
    const BesselTable table = bessel_table(y, order);
    double sum = 0.0;
    int small = 0;
    for (int n = 1; n <= order; ++n) {
      const double term = n * table[n] * table[n];
      sum += term;
      small = term < 1e-16 ? small + 1 : 0;
      if (small == 5) return sum;
    }
    order *= 2;
  }
}

}  // namespace detail

/// |sum_{n>=1} n J_n^2(y) - ((y^2/2)(J_0^2 + J_1^2) - (y/2) J_0 J_1)|
inline double weighted_sum_identity_gap(double y) {
  if (!std::isfinite(y) || y <= 0.0)
    throw domain_error("weighted_sum_identity_gap: y must be finite and > 0, got " + detail::fmt_num(y));
  const double series = detail::weighted_bessel_square_sum(y);
  const BesselTable low = bessel_table(y, 1);
  const double j0 = low[0];
  const double j1 = low[1];
  const double closed = 0.5 * y * y * (j0 * j0 + j1 * j1) - 0.5 * y * j0 * j1;
  return std::abs(series - closed);
}

}  // namespace lcs

#pragma once

// Resonant Jaynes-Cummings atomic inversion W(t) = sum_m P_m cos(lambda t sqrt(m+1))
// for an atom starting in the excited state, plus collapse/revival detection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcs/error.hpp"
#include "lcs/statistics.hpp"

namespace lcs {

inline constexpr double collapse_threshold = 0.1;
inline constexpr double revival_threshold = 0.2;
inline constexpr std::size_t default_envelope_window = 161;

namespace detail {

inline double inversion_sum(std::span<const double> p, double phase_rate) {
  double w = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) w += p[m] * std::cos(phase_rate * std::sqrt(static_cast<double>(m + 1)));
  return w;
}

inline void validate_coupling(double lambda) {
  if (!std::isfinite(lambda) || !(lambda > 0.0))
    throw domain_error("atomic inversion: lambda must be finite and > 0, got " + fmt_num(lambda));
}

}  // namespace detail

inline double atomic_inversion(std::span<const double> p, double lambda, double t) {
  validate_distribution(p, "atomic_inversion");
  detail::validate_coupling(lambda);
  if (!std::isfinite(t) || t < 0.0) throw domain_error("atomic_inversion: t must be finite and >= 0");
  return detail::inversion_sum(p, lambda * t);
}

struct InversionTrace {
  std::vector<double> times;   // units of 1/lambda when lambda = 1
  std::vector<double> values;  // W(times[k])
  double lambda = 1.0;
};

/// W sampled at steps uniform points on [0, t_max].
inline InversionTrace inversion_trace(std::span<const double> p, double lambda, double t_max, std::size_t steps) {
  validate_distribution(p, "inversion_trace");
  detail::validate_coupling(lambda);
  if (steps < 2) throw domain_error("inversion_trace: steps must be >= 2");
  if (!std::isfinite(t_max) || !(t_max > 0.0)) throw domain_error("inversion_trace: t_max must be finite and > 0");

  InversionTrace trace{std::vector<double>(steps), std::vector<double>(steps), lambda};
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    trace.times[k] = t;
    trace.values[k] = detail::inversion_sum(p, lambda * t);
  }
  return trace;
}

/// Centered sliding-window maximum of |W|; the window is clipped at the ends.
inline std::vector<double> envelope(const InversionTrace& trace, std::size_t window) {
  const std::size_t n = trace.values.size();
  if (window < 3 || window % 2 == 0) throw domain_error("envelope: window must be odd and >= 3");
  if (window > n)
    throw domain_error("envelope: window " + std::to_string(window) + " exceeds trace length " + std::to_string(n));

  const std::size_t half = window / 2;
  std::vector<double> out(n);
  std::deque<std::size_t> candidates;  // indices with decreasing |W|
  std::size_t pushed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t hi = std::min(n - 1, k + half);
    for (; pushed <= hi; ++pushed) {
      const double a = std::abs(trace.values[pushed]);
      while (!candidates.empty() && std::abs(trace.values[candidates.back()]) <= a) candidates.pop_back();
      candidates.push_back(pushed);
    }
    const std::size_t lo = k >= half ? k - half : 0;
    while (candidates.front() < lo) candidates.pop_front();
    out[k] = std::abs(trace.values[candidates.front()]);
  }
  return out;
}

struct RevivalReport {
  std::vector<double> envelope;
  std::optional<double> collapse_time;  // first time the envelope drops below 0.1
  std::vector<double> revival_times;    // envelope peaks above 0.2 after the collapse
};

/// Plateau-aware local maxima of the envelope after the first collapse. A
/// plateau counts once, at its midpoint.
inline RevivalReport detect_revivals(const InversionTrace& trace, std::size_t window = default_envelope_window) {
  RevivalReport report;
  report.envelope = envelope(trace, window);
  const auto& env = report.envelope;
  const std::size_t n = env.size();

  std::size_t start = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (env[k] < collapse_threshold) {
      start = k;
      break;
    }
  }
  if (start == n) return report;
  report.collapse_time = trace.times[start];

  for (std::size_t k = start + 1; k + 1 < n;) {
    std::size_t end = k;
    while (end + 1 < n && env[end + 1] == env[k]) ++end;
    const bool above_left = env[k] > env[k - 1];
    const bool above_right = end + 1 < n && env[k] > env[end + 1];
    if (above_left && above_right && env[k] > revival_threshold) report.revival_times.push_back(trace.times[(k + end) / 2]);
    k = end + 1;
  }
  return report;
}

}  // namespace lcs

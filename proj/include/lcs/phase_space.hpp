#pragma once

// Husimi Q(alpha) = |<alpha|psi>|^2 / pi sampled on rectangular grids.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "lcs/error.hpp"
#include "lcs/fock.hpp"
#include "lcs/statistics.hpp"

namespace lcs {

struct OverlapResult {
  amplitude value;
  bool underflow = false;  // e^{-|alpha|^2/2} scale left nothing representable
};

/// <alpha|v> = e^{-|alpha|^2/2} sum_n conj(alpha)^n / sqrt(n!) v[n], with the
/// term factors accumulated recursively and a running exponent so that neither
/// n! nor the Gaussian prefactor over/underflows before the final product.
inline OverlapResult coherent_overlap(amplitude alpha, const FockVector& v) {
  const amplitude ca = std::conj(alpha);
  constexpr double rescale = 1e100;
  const double log_rescale = std::log(rescale);

  double log_scale = -0.5 * std::norm(alpha);
  amplitude t = 1.0;
  amplitude sum = t * v[0];
  for (std::size_t n = 1; n < v.dim(); ++n) {
    t *= ca / std::sqrt(static_cast<double>(n));
    sum += t * v[n];
    if (std::abs(t) > rescale) {
      t /= rescale;
      sum /= rescale;
      log_scale += log_rescale;
    }
  }
  if (sum == amplitude(0.0)) return {sum, false};
  // Fold the scale into the sum's magnitude so only the final value can underflow.
  const double mag = std::abs(sum);
  const double log_mag = std::log(mag) + log_scale;
  const amplitude value = (sum / mag) * std::exp(log_mag);
  const bool underflow = value == amplitude(0.0);
  return {underflow ? amplitude(0.0) : value, underflow};
}

inline double husimi_point(amplitude alpha, const FockVector& v) {
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > normalization_tolerance)
    throw domain_error("husimi_point: state is not normalized (norm " + detail::fmt_num(norm) + ")");
  return std::norm(coherent_overlap(alpha, v).value) / std::numbers::pi;
}

struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  std::size_t nx = 201, ny = 201;

  static GridSpec centered(double half_width, std::size_t samples) {
    return {-half_width, half_width, -half_width, half_width, samples, samples};
  }

  double x_at(std::size_t i) const noexcept { return x_min + (x_max - x_min) * static_cast<double>(i) / (nx - 1); }
  double y_at(std::size_t j) const noexcept { return y_min + (y_max - y_min) * static_cast<double>(j) / (ny - 1); }
  double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
  double dy() const noexcept { return (y_max - y_min) / (ny - 1); }
};

inline constexpr std::size_t default_grid_samples = 201;

/// Square grid of half-width 3 + 2 sqrt(<n> + 1), 201 x 201.
inline GridSpec default_grid(const FockVector& v) {
  const Moments m = moments(photon_distribution(v));
  return GridSpec::centered(3.0 + 2.0 * std::sqrt(m.mean + 1.0), default_grid_samples);
}

struct PhaseSpaceGrid {
  GridSpec spec;
  std::vector<double> values;  // values[i * ny + j] = Q(x_at(i) + i y_at(j))
  std::size_t argmax_i = 0, argmax_j = 0;
  double max_value = 0.0;

  double at(std::size_t i, std::size_t j) const noexcept { return values[i * spec.ny + j]; }

  /// Riemann sum of Q dX dY.
  double total_mass() const noexcept {
    double s = 0.0;
    for (double q : values) s += q;
    return s * spec.dx() * spec.dy();
  }
};

inline PhaseSpaceGrid husimi_grid(const FockVector& v, const GridSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2) throw domain_error("husimi_grid: need at least 2 samples per axis");
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) || !std::isfinite(spec.y_min) ||
      !std::isfinite(spec.y_max) || !(spec.x_min < spec.x_max) || !(spec.y_min < spec.y_max))
    throw domain_error("husimi_grid: ranges must be finite and non-degenerate");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > normalization_tolerance)
    throw domain_error("husimi_grid: state is not normalized (norm " + detail::fmt_num(norm) + ")");

  PhaseSpaceGrid grid{spec, std::vector<double>(spec.nx * spec.ny)};
  for (std::size_t i = 0; i < spec.nx; ++i) {
    for (std::size_t j = 0; j < spec.ny; ++j) {
      const amplitude alpha(spec.x_at(i), spec.y_at(j));
      grid.values[i * spec.ny + j] = std::norm(coherent_overlap(alpha, v).value) / std::numbers::pi;
    }
  }
  // First maximum in row-major order, so ties resolve deterministically.
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    if (grid.values[k] > grid.max_value) {
      grid.max_value = grid.values[k];
      grid.argmax_i = k / spec.ny;
      grid.argmax_j = k % spec.ny;
    }
  }
  return grid;
}

}  // namespace lcs

#pragma once

// London coherent states exp(x(V - V^dagger))|0> and the modified (Gazeau)
// family with coefficients proportional to sqrt(n+1) J_{n+1}(2x), built either
// from closed-form Bessel coefficients or by propagating the generator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "lcs/bessel.hpp"
#include "lcs/error.hpp"
#include "lcs/fock.hpp"

namespace lcs {

enum class Family { London, ModifiedLondon };

inline std::string_view to_string(Family f) noexcept {
  return f == Family::London ? "london" : "modified";
}

struct StateSpec {
  Family family = Family::ModifiedLondon;
  double amplitude = 0.0;  // x >= 0
  double phase = 0.0;      // theta, z = x e^{i theta}
  std::size_t dim = 0;     // 0 selects truncation_dim(amplitude)
};

inline constexpr std::size_t min_state_dim = 32;

inline void validate(const StateSpec& spec) {
  if (!std::isfinite(spec.amplitude) || spec.amplitude < 0.0)
    throw domain_error("state: amplitude x must be finite and >= 0 (use phase=pi for negative x), got " +
                       detail::fmt_num(spec.amplitude));
  if (!std::isfinite(spec.phase)) throw domain_error("state: phase must be finite");
  if (spec.dim != 0 && spec.dim < min_state_dim)
    throw domain_error("state: dim must be 0 (auto) or >= " + std::to_string(min_state_dim) + ", got " +
                       std::to_string(spec.dim));
}

inline std::size_t resolved_dim(const StateSpec& spec) {
  validate(spec);
  return spec.dim != 0 ? spec.dim : truncation_dim(spec.amplitude);
}

/// out[n] = e^{-i theta n} v[n]
inline FockVector rotate_phase(const FockVector& v, double theta) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) out[n] = std::polar(1.0, -theta * static_cast<double>(n)) * v[n];
  return out;
}

struct NormalizationConstants {
  double series;       // (1/x^2) sum_{n>=1} n J_n^2(2x)
  double closed_form;  // 2[J_0^2(2x) + J_1^2(2x)] - J_0(2x) J_1(2x) / x
  double unit_norm;    // sqrt(sum_{n>=1} n J_n^2(2x)), the factor that unit-normalizes
};

inline NormalizationConstants normalization_constants(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw domain_error("normalization_constants: x must be finite and > 0, got " + detail::fmt_num(x));
  const double y = 2.0 * x;
  const double weighted = detail::weighted_bessel_square_sum(y);
  const BesselTable low = bessel_table(y, 1);
  const double j0 = low[0];
  const double j1 = low[1];
  return {weighted / (x * x), 2.0 * (j0 * j0 + j1 * j1) - j0 * j1 / x, std::sqrt(weighted)};
}

struct StateDiagnostics {
  std::size_t dim = 0;
  double tail_mass = 0.0;        // probability of the untruncated state beyond dim
  double renormalization = 0.0;  // |norm - 1| of the raw truncated vector before rescaling
};

struct PreparedState {
  FockVector state;
  StateDiagnostics diagnostics;
};

namespace detail {

// Real coefficients of the theta = 0 state on dim levels, together with the
// probability mass that falls beyond dim.
inline PreparedState closed_form_state(Family family, double x, std::size_t dim) {
  FockVector v(dim);
  StateDiagnostics diag{dim, 0.0, 0.0};
  if (x == 0.0) {
    v[0] = 1.0;
    return {std::move(v), diag};
  }

  const double y = 2.0 * x;
  const std::size_t extended = std::max(dim, truncation_dim(x)) + 64;
  const BesselTable table = bessel_table(y, static_cast<int>(extended) + 1);

  const auto raw = [&](std::size_t n) {
    const double j = table[n + 1];
    const double m = static_cast<double>(n + 1);
    return family == Family::London ? m * j / x : std::sqrt(m) * j;
  };
  const double scale = family == Family::London ? 1.0 : 1.0 / std::sqrt(weighted_bessel_square_sum(y));

  double kept = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    const double c = raw(n) * scale;
    v[n] = c;
    kept += c * c;
  }
  double tail = 0.0;
  for (std::size_t n = dim; n < extended; ++n) {
    const double c = raw(n) * scale;
    tail += c * c;
  }
  diag.tail_mass = tail;

  const double norm = std::sqrt(kept);
  diag.renormalization = std::abs(norm - 1.0);
  v *= 1.0 / norm;
  return {std::move(v), diag};
}

}  // namespace detail

inline PreparedState prepare_state(const StateSpec& spec) {
  const std::size_t dim = resolved_dim(spec);
  PreparedState built = detail::closed_form_state(spec.family, spec.amplitude, dim);
  built.state = rotate_phase(built.state, spec.phase);
  return built;
}

/// e^{-i theta n} (n+1) J_{n+1}(2x) / x
inline FockVector build_london(const StateSpec& spec) {
  if (spec.family != Family::London) throw domain_error("build_london: spec.family must be london");
  return prepare_state(spec).state;
}

/// e^{-i theta n} sqrt(n+1) J_{n+1}(2x) / sqrt(sum_m m J_m^2(2x))
inline FockVector build_modified(const StateSpec& spec) {
  if (spec.family != Family::ModifiedLondon) throw domain_error("build_modified: spec.family must be modified");
  return prepare_state(spec).state;
}

inline FockVector build_state(const StateSpec& spec) { return prepare_state(spec).state; }

/// Same states from exp(-x G)|0>, G the London generator V - V^dagger or its
/// modified counterpart. With V = sum |n><n+1|, exp(+x(V - V^dagger))|0> carries an
/// extra (-1)^n relative to the Bessel closed form (it is the theta = pi state),
/// so the closed-form orientation is exp(x(V^dagger - V))|0>. The modified route
/// is renormalized numerically.
inline PreparedState build_via_propagator(const StateSpec& spec, double tol = 1e-12) {
  const std::size_t dim = resolved_dim(spec);
  const auto g = spec.family == Family::London ? TridiagonalGenerator::london(dim)
                                               : TridiagonalGenerator::modified_london(dim);
  PropagationResult r = propagate(g, -spec.amplitude, FockVector::number_state(dim, 0), {tol});

  // The propagator cannot see past dim; its boundary population stands in for the tail.
  StateDiagnostics diag{dim, r.truncation_loss, 0.0};
  const double norm = r.state.norm();
  diag.renormalization = std::abs(norm - 1.0);
  if (spec.family == Family::ModifiedLondon) r.state *= 1.0 / norm;
  return {rotate_phase(r.state, spec.phase), diag};
}

}  // namespace lcs

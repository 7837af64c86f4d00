#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcs/error.hpp"
#include "lcs/fock.hpp"
#include "lcs/states.hpp"

namespace lcs {

inline constexpr double normalization_tolerance = 1e-9;

/// P_n = |<n|psi>|^2 for a unit-norm state.
inline std::vector<double> photon_distribution(const FockVector& v) {
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > normalization_tolerance)
    throw domain_error("photon_distribution: state is not normalized (norm " + detail::fmt_num(norm) + ")");
  std::vector<double> p(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) p[n] = std::norm(v[n]);
  return p;
}

inline void validate_distribution(std::span<const double> p, const char* who) {
  if (p.empty()) throw domain_error(std::string(who) + ": empty distribution");
  double total = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!std::isfinite(p[n]) || p[n] < 0.0)
      throw domain_error(std::string(who) + ": P[" + std::to_string(n) + "] is negative or not finite");
    total += p[n];
  }
  if (std::abs(total - 1.0) > normalization_tolerance)
    throw domain_error(std::string(who) + ": distribution is not normalized (sum " + detail::fmt_num(total) + ")");
}

struct Moments {
  double mean;
  double second_moment;
};

inline Moments moments(std::span<const double> p) {
  validate_distribution(p, "moments");
  Moments m{0.0, 0.0};
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double k = static_cast<double>(n);
    m.mean += k * p[n];
    m.second_moment += k * k * p[n];
  }
  return m;
}

/// (<n^2> - <n>^2)/<n> - 1; negative means sub-Poissonian.
inline double mandel_q(std::span<const double> p) {
  const Moments m = moments(p);
  if (m.mean == 0.0) throw domain_error("mandel_q: undefined for zero mean photon number (vacuum)");
  return (m.second_moment - m.mean * m.mean) / m.mean - 1.0;
}

struct StatisticsReport {
  std::vector<double> distribution;
  double mean = 0.0;
  double second_moment = 0.0;
  std::optional<double> mandel_q;  // empty for the vacuum
  double tail_mass_dropped = 0.0;
};

inline StatisticsReport statistics(const FockVector& v, double tail_mass_dropped = 0.0) {
  StatisticsReport r;
  r.distribution = photon_distribution(v);
  const Moments m = moments(r.distribution);
  r.mean = m.mean;
  r.second_moment = m.second_moment;
  if (m.mean > 0.0) r.mandel_q = (m.second_moment - m.mean * m.mean) / m.mean - 1.0;
  r.tail_mass_dropped = tail_mass_dropped;
  return r;
}

/// Mandel Q of the closed-form state of `family` at amplitude x, theta = 0.
inline double mandel_q_at(Family family, double x) {
  return mandel_q(photon_distribution(build_state({family, x, 0.0, 0})));
}

/// Amplitude x* in [lo, hi] where Mandel Q changes sign, by bisection to 1e-6.
/// Assumes a single sign change inside the bracket.
inline double subpoissonian_crossover(Family family, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw domain_error("subpoissonian_crossover: need finite lo < hi");
  double q_lo = mandel_q_at(family, lo);
  const double q_hi = mandel_q_at(family, hi);
  if (q_lo == 0.0) return lo;
  if (q_hi == 0.0) return hi;
  if ((q_lo < 0.0) == (q_hi < 0.0))
    throw bracket_error("subpoissonian_crossover: Mandel Q has the same sign at both ends of [" +
                            detail::fmt_num(lo) + ", " + detail::fmt_num(hi) + "] (Q=" + detail::fmt_num(q_lo) +
                            ", " + detail::fmt_num(q_hi) + ")",
                        q_lo, q_hi);
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double q_mid = mandel_q_at(family, mid);
    if (q_mid == 0.0) return mid;
    if ((q_mid < 0.0) == (q_lo < 0.0)) {
      lo = mid;
      q_lo = q_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lcs

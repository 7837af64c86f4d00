#pragma once

// Truncated Fock space: state vectors over |0>..|dim-1>, the one-sided shifts
// V = sum |n><n+1| and V^dagger, diagonal number-operator functions, and the
// action of exp(x G) for tridiagonal generators G.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcs/error.hpp"

namespace lcs {

using amplitude = std::complex<double>;

class FockVector {
 public:
  explicit FockVector(std::size_t dim) : amps_(dim) {
    if (dim < 1) throw domain_error("FockVector: dim must be >= 1");
  }

  explicit FockVector(std::vector<amplitude> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw domain_error("FockVector: dim must be >= 1");
    for (std::size_t n = 0; n < amps_.size(); ++n) {
      if (!std::isfinite(amps_[n].real()) || !std::isfinite(amps_[n].imag()))
        throw domain_error("FockVector: non-finite amplitude at n=" + std::to_string(n));
    }
  }

  static FockVector number_state(std::size_t dim, std::size_t n) {
    if (n >= dim) throw domain_error("number_state: n=" + std::to_string(n) + " outside dim=" + std::to_string(dim));
    FockVector v(dim);
    v.amps_[n] = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return amps_.size(); }

  amplitude& operator[](std::size_t n) noexcept { return amps_[n]; }
  const amplitude& operator[](std::size_t n) const noexcept { return amps_[n]; }

  std::span<amplitude> amplitudes() noexcept { return amps_; }
  std::span<const amplitude> amplitudes() const noexcept { return amps_; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }
  double norm() const noexcept { return std::sqrt(norm_squared()); }

  /// Largest |amplitude difference| against another vector of equal dim.
  double max_distance(const FockVector& other) const {
    if (other.dim() != dim()) throw domain_error("max_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t n = 0; n < amps_.size(); ++n) d = std::max(d, std::abs(amps_[n] - other.amps_[n]));
    return d;
  }

  FockVector& operator*=(amplitude s) noexcept {
    for (auto& a : amps_) a *= s;
    return *this;
  }

  bool operator==(const FockVector&) const = default;

 private:
  std::vector<amplitude> amps_;
};

/// V|psi>: out[n] = v[n+1], out[dim-1] = 0.
inline FockVector apply_lower(const FockVector& v) {
  if (v.dim() < 2) throw domain_error("apply_lower: dim must be >= 2, got " + std::to_string(v.dim()));
  FockVector out(v.dim());
  for (std::size_t n = 0; n + 1 < v.dim(); ++n) out[n] = v[n + 1];
  return out;
}

struct RaiseResult {
  FockVector state;
  double dropped_probability;  // |v[dim-1]|^2, pushed past the truncation
};

/// V^dagger|psi>: out[n+1] = v[n], out[0] = 0.
inline RaiseResult apply_raise(const FockVector& v) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n + 1 < v.dim(); ++n) out[n + 1] = v[n];
  return {std::move(out), std::norm(v[v.dim() - 1])};
}

/// f(n)|n><n| applied to v.
template <typename F>
FockVector apply_number_fn(F&& f, const FockVector& v) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) {
    const double fn = f(n);
    if (!std::isfinite(fn)) throw domain_error("apply_number_fn: f is not finite at n=" + std::to_string(n));
    out[n] = fn * v[n];
  }
  return out;
}

/// G = sum_n diag[n]|n><n| + sub[n]|n><n+1| + sup[n]|n+1><n|.
struct TridiagonalGenerator {
  std::vector<double> sub;   // lowering strengths, length dim-1
  std::vector<double> sup;   // raising strengths, length dim-1
  std::vector<double> diag;  // length dim

  std::size_t dim() const noexcept { return diag.size(); }

  /// V - V^dagger
  static TridiagonalGenerator london(std::size_t dim) {
    if (dim < 1) throw domain_error("TridiagonalGenerator: dim must be >= 1");
    return {std::vector<double>(dim - 1, 1.0), std::vector<double>(dim - 1, -1.0), std::vector<double>(dim, 0.0)};
  }

  /// sqrt((n+2)/(n+1)) V - V^dagger sqrt((n+1)/(n+2)): the London generator
  /// conjugated by sqrt(n+1).
  static TridiagonalGenerator modified_london(std::size_t dim) {
    if (dim < 1) throw domain_error("TridiagonalGenerator: dim must be >= 1");
    TridiagonalGenerator g{std::vector<double>(dim - 1), std::vector<double>(dim - 1), std::vector<double>(dim, 0.0)};
    for (std::size_t n = 0; n + 1 < dim; ++n) {
      const double ratio = static_cast<double>(n + 2) / static_cast<double>(n + 1);
      g.sub[n] = std::sqrt(ratio);
      g.sup[n] = -std::sqrt(1.0 / ratio);
    }
    return g;
  }

  void validate() const {
    if (diag.empty()) throw domain_error("TridiagonalGenerator: dim must be >= 1");
    if (sub.size() + 1 != diag.size() || sup.size() + 1 != diag.size())
      throw domain_error("TridiagonalGenerator: off-diagonal lengths must equal dim-1");
  }

  void apply(std::span<const amplitude> in, std::span<amplitude> out) const noexcept {
    const std::size_t d = dim();
    for (std::size_t n = 0; n < d; ++n) {
      amplitude acc = diag[n] * in[n];
      if (n + 1 < d) acc += sub[n] * in[n + 1];
      if (n > 0) acc += sup[n - 1] * in[n - 1];
      out[n] = acc;
    }
  }

  /// Induced 1-norm (max column sum).
  double one_norm() const noexcept {
    const std::size_t d = dim();
    double best = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
      double col = std::abs(diag[n]);
      if (n > 0) col += std::abs(sub[n - 1]);
      if (n + 1 < d) col += std::abs(sup[n]);
      best = std::max(best, col);
    }
    return best;
  }
};

struct PropagateOptions {
  double tol = 1e-12;
  int max_terms = 60;  // Taylor terms per substep before giving up
};

struct PropagationResult {
  FockVector state;
  // Sum over substeps of the population sitting on the top level |dim-1>;
  // an upper proxy for probability the truncation would have lost.
  double truncation_loss = 0.0;
  int substeps = 0;
  int products = 0;  // generator-vector products performed
};

/// exp(x G) v0 by substepping: exp(xG) = exp(hG)^s with |h| ||G||_1 <= 1, each
/// factor a truncated Taylor series.
inline PropagationResult propagate(const TridiagonalGenerator& g, double x, const FockVector& v0,
                                   const PropagateOptions& opts = {}) {
  g.validate();
  if (g.dim() != v0.dim())
    throw domain_error("propagate: generator dim " + std::to_string(g.dim()) + " != vector dim " +
                       std::to_string(v0.dim()));
  if (!std::isfinite(x)) throw domain_error("propagate: x must be finite");
  if (!(opts.tol > 0.0) || !std::isfinite(opts.tol))
    throw domain_error("propagate: tol must be finite and > 0, got " + detail::fmt_num(opts.tol));

  PropagationResult result{v0};
  if (x == 0.0) return result;

  const std::size_t d = v0.dim();
  const double scaled = std::abs(x) * g.one_norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(scaled)));
  const double h = x / steps;
  const double step_tol = opts.tol / steps;

  std::vector<amplitude> current(v0.amplitudes().begin(), v0.amplitudes().end());
  std::vector<amplitude> term(d), next(d);

  for (int s = 0; s < steps; ++s) {
    double ref = 0.0;
    for (const auto& a : current) ref += std::norm(a);
    ref = std::max(std::sqrt(ref), 1e-300);

    term = current;
    double term_norm = ref;
    int k = 1;
    for (; k <= opts.max_terms; ++k) {
      g.apply(term, next);
      ++result.products;
      const double c = h / k;
      term_norm = 0.0;
      for (std::size_t n = 0; n < d; ++n) {
        term[n] = c * next[n];
        current[n] += term[n];
        term_norm += std::norm(term[n]);
      }
      term_norm = std::sqrt(term_norm);
      // Remainder after term k is bounded by term_norm / k since |h| ||G|| <= 1.
      if (term_norm / k <= 0.5 * step_tol * ref) break;
    }
    if (k > opts.max_terms)
      throw convergence_error("propagate: Taylor series did not reach tol " + detail::fmt_num(opts.tol) +
                                  " within " + std::to_string(opts.max_terms) + " terms",
                              term_norm / opts.max_terms * steps);
    result.truncation_loss += std::norm(current[d - 1]);
  }

  result.state = FockVector(std::move(current));
  result.substeps = steps;
  return result;
}

/// Fock cutoff for London-type states at amplitude x: tail probability < 1e-20.
inline std::size_t truncation_dim(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw domain_error("truncation_dim: x must be finite and >= 0, got " + detail::fmt_num(x));
  const double y = 2.0 * x;
  const double d = std::ceil(y + 12.0 * std::cbrt(y) + 16.0);
  return std::max<std::size_t>(32, static_cast<std::size_t>(d));
}

}  // namespace lcs

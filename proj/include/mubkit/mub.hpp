#pragma once

// Mutually unbiased bases: single-basis constructors, complete families and
// the overlap checks that certify them.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"
#include "mubkit/report.hpp"

namespace mubkit {

/// d orthonormal vectors, stored as the columns of a d x d matrix.
/// Orthonormality is not enforced on construction (loaded data may be
/// faulty); check_orthonormal / check_family report it.
struct Basis {
  std::string label;
  ComplexMatrix vectors;

  Basis() = default;
  Basis(std::string label_, ComplexMatrix vectors_)
      : label(std::move(label_)), vectors(std::move(vectors_)) {
    if (!vectors.is_square() || vectors.rows() < 1) {
      throw DimensionMismatch("basis matrix must be square, got " +
                              std::to_string(vectors.rows()) + "x" +
                              std::to_string(vectors.cols()));
    }
  }

  int dim() const noexcept { return static_cast<int>(vectors.rows()); }
  ComplexMatrix vector(std::size_t i) const { return vectors.col(i); }
};

/// d+1 bases; bases[0] is the canonical (m-descending |j m>) basis.
struct MubFamily {
  int dim = 0;
  std::string source;  // "paper" or "generated"
  std::vector<Basis> bases;
};

/// A unitary carrying one basis onto another.
struct BasisTransform {
  ComplexMatrix u;
  std::string source_label;
  std::string target_label;

  int dim() const noexcept { return static_cast<int>(u.rows()); }

  Basis apply(const Basis& b) const {
    if (b.dim() != dim()) {
      throw DimensionMismatch("transform of dim " + std::to_string(dim()) +
                              " applied to basis of dim " +
                              std::to_string(b.dim()));
    }
    return Basis(target_label.empty() ? b.label : target_label,
                 u * b.vectors);
  }
};

enum class FamilySource { automatic, paper, generated };

// ---------------------------------------------------------------------------
// dimension bookkeeping

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// The prime p with n = p^k (k >= 1), if any.
inline std::optional<int> prime_power_base(int n) {
  if (n < 2) return std::nullopt;
  int p = 2;
  while (n % p != 0) ++p;
  int rest = n;
  while (rest % p == 0) rest /= p;
  if (rest != 1) return std::nullopt;
  return p;
}

/// Throws unless a complete family of d+1 MUBs is known to exist in dim d.
inline void require_complete_family_exists(int d) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  if (!prime_power_base(d)) {
    std::string detail =
        "no complete MUB family known; " + std::to_string(d) +
        " is not a prime power";
    if (d == 6) {
      detail +=
          " (Zauner's conjecture: at most three MUBs exist in dimension 6, "
          "so seven commuting classes cannot be built)";
    }
    throw UnsupportedDimension(d, DimensionIssue::no_complete_family, detail);
  }
}

// ---------------------------------------------------------------------------
// single bases

/// Standard basis; index 0 is m = +j, descending.
inline Basis canonical_basis(int d) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  return Basis("canonical", ComplexMatrix::identity(static_cast<std::size_t>(d)));
}

/// Vector j has component k equal to w^{jk}/sqrt(d), w = exp(2 pi i / d).
inline Basis fourier_basis(int d) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  const auto n = static_cast<std::size_t>(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix v(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      v(k, j) = norm * root_of_unity(d, static_cast<long long>(j * k));
  return Basis("fourier", std::move(v));
}

/// exp(-i Jz^2 t) in the m-descending canonical basis.
inline BasisTransform one_axis_twist(int d, double t) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  const auto n = static_cast<std::size_t>(d);
  const double j = 0.5 * static_cast<double>(d - 1);
  std::vector<Complex> phases(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = j - static_cast<double>(i);
    phases[i] = std::polar(1.0, -m * m * t);
  }
  return {ComplexMatrix::diagonal(std::span<const Complex>(phases)), "",
          "one-axis-twist"};
}

// ---------------------------------------------------------------------------
// checks

/// max_{ij} | |<a_i|b_j>|^2 - 1/d |.
inline CheckResult check_unbiased(const Basis& a, const Basis& b,
                                  Tolerance tol = {}) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("check_unbiased: bases of dim " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  const ComplexMatrix overlaps = adjoint(a.vectors) * b.vectors;
  const double target = 1.0 / static_cast<double>(a.dim());
  double worst = 0.0;
  for (const Complex& z : overlaps.data())
    worst = std::max(worst, std::abs(std::norm(z) - target));
  return {"unbiased(" + a.label + "," + b.label + ")", worst,
          worst <= tol.eps()};
}

inline CheckResult check_orthonormal(const Basis& b, Tolerance tol = {}) {
  const double dev = max_abs_diff(adjoint(b.vectors) * b.vectors,
                                  ComplexMatrix::identity(b.vectors.rows()));
  return {"orthonormal(" + b.label + ")", dev, dev <= tol.eps()};
}

/// Member count, per-basis orthonormality, and pairwise unbiasedness,
/// aggregated to worst deviations.
inline Report check_family(const MubFamily& f, Tolerance tol = {}) {
  Report r;
  const std::size_t expected = static_cast<std::size_t>(f.dim) + 1;
  r.add("member_count",
        std::abs(static_cast<double>(f.bases.size()) -
                 static_cast<double>(expected)),
        f.bases.size() == expected);

  bool dims_ok = true;
  for (const Basis& b : f.bases) dims_ok = dims_ok && b.dim() == f.dim;
  r.add("basis_dimensions", dims_ok ? 0.0 : 1.0, dims_ok);
  if (!dims_ok) return r;

  double worst_orth = 0.0;
  for (const Basis& b : f.bases)
    worst_orth = std::max(worst_orth, check_orthonormal(b, tol).worst_deviation);
  r.add("orthonormality", worst_orth, worst_orth <= tol.eps());

  double worst_unb = 0.0;
  for (std::size_t i = 0; i < f.bases.size(); ++i)
    for (std::size_t k = i + 1; k < f.bases.size(); ++k)
      worst_unb = std::max(
          worst_unb, check_unbiased(f.bases[i], f.bases[k], tol).worst_deviation);
  r.add("unbiasedness", worst_unb, worst_unb <= tol.eps());
  return r;
}

/// Largest deviation of |<a_i|b_i>| from 1 over columns: zero iff the two
/// bases agree column by column up to per-column global phases.
inline double phase_deviation(const Basis& a, const Basis& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("phase_deviation");
  double worst = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i)
    worst = std::max(worst,
                     std::abs(std::abs(inner(a.vector(i), b.vector(i))) - 1.0));
  return worst;
}

/// Same as phase_deviation but allowing any column order: every column of a
/// is matched to its best partner in b.
inline double unordered_phase_deviation(const Basis& a, const Basis& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("unordered_phase_deviation");
  double worst = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i) {
    double best = 1.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(b.dim()); ++k)
      best = std::min(best,
                      std::abs(std::abs(inner(a.vector(i), b.vector(k))) - 1.0));
    worst = std::max(worst, best);
  }
  return worst;
}

/// u = sum_i |b_i><a_i|, so that u a_i = b_i exactly.
inline BasisTransform unitary_between(const Basis& a, const Basis& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("unitary_between: bases of dim " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  return {b.vectors * adjoint(a.vectors), a.label, b.label};
}

// ---------------------------------------------------------------------------
// families

/// Canonical basis plus, for b = 0..d-1, the basis whose vector j has
/// component k equal to w^{b k^2 + j k}/sqrt(d).
inline MubFamily odd_prime_family(int d) {
  require_complete_family_exists(d);
  if (d == 2 || !is_prime(d)) {
    throw UnsupportedDimension(
        d, DimensionIssue::no_construction,
        "quadratic-phase construction needs an odd prime dimension");
  }
  MubFamily f{d, "generated", {}};
  Basis canon = canonical_basis(d);
  canon.label = "B1";
  f.bases.push_back(std::move(canon));

  const auto n = static_cast<std::size_t>(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (long long b = 0; b < d; ++b) {
    ComplexMatrix v(n, n);
    for (long long j = 0; j < d; ++j)
      for (long long k = 0; k < d; ++k)
        v(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) =
            norm * root_of_unity(d, b * k * k + j * k);
    f.bases.emplace_back("B" + std::to_string(b + 2), std::move(v));
  }
  return f;
}

inline MubFamily paper_family(int d);  // reference_tables.hpp

/// Picks the reference table when one exists (d <= 5), else the
/// quadratic-phase construction.
inline MubFamily make_family(int d,
                             FamilySource source = FamilySource::automatic);

}  // namespace mubkit

#include "mubkit/reference_tables.hpp"

#pragma once

// State determination with a complete operator set: expansion coefficients,
// MUB measurement statistics, finite-shot simulation and reconstruction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mubkit/classes.hpp"
#include "mubkit/detail/hermitian_eigen.hpp"
#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/sampling.hpp"

namespace mubkit {

/// Hermitian, unit-trace d x d matrix. Positivity is queried rather than
/// enforced so that raw linear-inversion estimates can be represented.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, Tolerance tol = {}) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() < 2) {
      throw DimensionMismatch("density matrix must be square with d >= 2");
    }
    if (!is_hermitian(m_, tol)) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    const Complex t = trace(m_);
    if (std::abs(t - 1.0) > tol.eps()) {
      throw std::invalid_argument("density matrix trace is " +
                                  std::to_string(t.real()) + ", expected 1");
    }
  }

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  double min_eigenvalue() const {
    return detail::hermitian_eigen(m_).values.front();
  }
  bool is_physical(Tolerance tol = {}) const {
    return min_eigenvalue() >= -tol.eps();
  }
  double purity() const { return hs_inner(m_, m_).real(); }

 private:
  ComplexMatrix m_;
};

/// a_i = Tr(rho alpha_i), flattened in operator-set order.
struct ExpansionCoefficients {
  int dim = 0;
  std::vector<double> values;
};

/// Per-basis outcome probabilities (or frequencies when shots is set).
struct MeasurementRecord {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> probabilities;
  std::optional<std::uint64_t> shots;
};

struct ReconstructionReport {
  DensityMatrix estimate;
  std::optional<double> trace_distance;  // vs reference, when supplied
  std::optional<double> fidelity;        // vs a pure reference only
  std::optional<std::uint64_t> shots;
  bool projected = false;
  double raw_min_eigenvalue = 0.0;  // of the linear-inversion estimate
};

// ---------------------------------------------------------------------------
// metrics

/// (1/2) sum |lambda_i(a - b)|; singular values of a Hermitian matrix are
/// the moduli of its eigenvalues.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_square_pair(a, b, "trace_distance");
  const auto eig = detail::hermitian_eigen(a - b);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return 0.5 * s;
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

inline bool is_pure(const DensityMatrix& rho, double tol = 1e-10) {
  return std::abs(rho.purity() - 1.0) <= tol;
}

/// F = <psi|sigma|psi> where one argument is the pure state |psi><psi|.
/// Mixed-mixed pairs are rejected.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity");
  const DensityMatrix* pure = nullptr;
  const DensityMatrix* other = nullptr;
  if (is_pure(a)) {
    pure = &a;
    other = &b;
  } else if (is_pure(b)) {
    pure = &b;
    other = &a;
  } else {
    throw std::invalid_argument("fidelity needs a pure reference state");
  }
  const auto eig = detail::hermitian_eigen(pure->matrix());
  const ComplexMatrix psi = eig.vectors.col(eig.vectors.cols() - 1);
  return (adjoint(psi) * other->matrix() * psi)(0, 0).real();
}

// ---------------------------------------------------------------------------
// random states

/// G G^dagger / Tr(G G^dagger), G with i.i.d. standard complex Gaussian
/// entries.
inline DensityMatrix random_density(int d, std::uint64_t seed) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix g(n, n);
  for (Complex& z : g.data()) z = {rng.normal(), rng.normal()};
  ComplexMatrix w = g * adjoint(g);
  w *= 1.0 / trace(w).real();
  for (std::size_t i = 0; i < n; ++i) w(i, i) = w(i, i).real();
  return DensityMatrix(std::move(w));
}

/// Haar-random pure state |psi><psi|.
inline DensityMatrix random_pure_state(int d, std::uint64_t seed) {
  if (d < 2) {
    throw UnsupportedDimension(d, DimensionIssue::too_small,
                               "dimension must be at least 2");
  }
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix psi(n, 1);
  for (Complex& z : psi.data()) z = {rng.normal(), rng.normal()};
  psi *= 1.0 / std::sqrt(inner(psi, psi).real());
  ComplexMatrix p = outer_projector(psi);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = p(i, i).real();
  return DensityMatrix(std::move(p));
}

// ---------------------------------------------------------------------------
// expansion

inline ExpansionCoefficients coefficients(const DensityMatrix& rho,
                                          const OperatorSet& s) {
  if (rho.dim() != s.dim) {
    throw DimensionMismatch("coefficients: state dim " +
                            std::to_string(rho.dim()) + ", set dim " +
                            std::to_string(s.dim));
  }
  ExpansionCoefficients c{s.dim, {}};
  c.values.reserve(s.size());
  // Tr(rho A) = hs_inner(A, rho) for Hermitian A; imaginary part is round-off
  for (const auto& cls : s.classes)
    for (const auto& op : cls.operators)
      c.values.push_back(hs_inner(op, rho.matrix()).real());
  return c;
}

/// rho = (1/d) (I + sum_i a_i alpha_i).
inline DensityMatrix reconstruct(const ExpansionCoefficients& c,
                                 const OperatorSet& s) {
  if (c.dim != s.dim || c.values.size() != s.size()) {
    throw DimensionMismatch("reconstruct: " + std::to_string(c.values.size()) +
                            " coefficients for a set of " +
                            std::to_string(s.size()) + " operators");
  }
  const auto d = static_cast<std::size_t>(s.dim);
  ComplexMatrix rho = ComplexMatrix::identity(d);
  std::size_t i = 0;
  for (const auto& cls : s.classes)
    for (const auto& op : cls.operators) rho += c.values[i++] * op;
  rho *= 1.0 / static_cast<double>(d);
  return DensityMatrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// measurement

/// p^(b)_i = <b_i|rho|b_i> for every basis of the family.
inline MeasurementRecord probabilities(const DensityMatrix& rho,
                                       const MubFamily& f) {
  if (rho.dim() != f.dim) {
    throw DimensionMismatch("probabilities: state dim " +
                            std::to_string(rho.dim()) + ", family dim " +
                            std::to_string(f.dim));
  }
  MeasurementRecord rec{f.dim, {}, {}, std::nullopt};
  for (const Basis& b : f.bases) {
    rec.labels.push_back(b.label);
    const ComplexMatrix diag = adjoint(b.vectors) * rho.matrix() * b.vectors;
    std::vector<double> p(static_cast<std::size_t>(f.dim));
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double v = diag(i, i).real();
      if (v < -1e-12) {
        throw std::domain_error("probabilities: state has negative weight " +
                                std::to_string(v) + " on " + b.label);
      }
      p[i] = std::clamp(v, 0.0, 1.0);
    }
    rec.probabilities.push_back(std::move(p));
  }
  return rec;
}

/// Class-b operator-k coefficient sum_i c_k[i] p^(b)_i, in operator-set order.
inline ExpansionCoefficients coefficients_from_probabilities(
    const MeasurementRecord& m, const CoefficientVectors& c) {
  if (m.dim != c.dim) {
    throw DimensionMismatch("coefficients_from_probabilities: record dim " +
                            std::to_string(m.dim) + ", coefficient dim " +
                            std::to_string(c.dim));
  }
  ExpansionCoefficients out{m.dim, {}};
  for (const auto& p : m.probabilities) {
    if (p.size() != static_cast<std::size_t>(m.dim)) {
      throw DimensionMismatch("probability vector of wrong length");
    }
    for (const auto& ck : c.vectors) {
      double a = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) a += ck[i] * p[i];
      out.values.push_back(a);
    }
  }
  return out;
}

/// n multinomial shots per basis, returned as frequencies. Basis b draws
/// from its own stream seeded by (seed, b), so the record does not depend
/// on the order in which bases are processed.
inline MeasurementRecord sample_shots(const MeasurementRecord& exact,
                                      std::uint64_t n, std::uint64_t seed) {
  if (exact.shots) {
    throw std::invalid_argument("sample_shots needs an exact record");
  }
  if (n == 0) throw std::invalid_argument("sample_shots: n must be positive");
  MeasurementRecord out{exact.dim, exact.labels, {}, n};
  out.probabilities.reserve(exact.probabilities.size());
  for (std::size_t b = 0; b < exact.probabilities.size(); ++b) {
    Rng rng(derive_stream_seed(seed, b));
    const auto counts = multinomial(rng, n, exact.probabilities[b]);
    std::vector<double> freq(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      freq[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    out.probabilities.push_back(std::move(freq));
  }
  return out;
}

/// Eigenvalue clipping at zero followed by trace renormalization.
inline DensityMatrix project_to_physical(const ComplexMatrix& m) {
  const auto eig = detail::hermitian_eigen(m);
  const std::size_t n = m.rows();
  std::vector<double> clipped(eig.values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < clipped.size(); ++i) {
    clipped[i] = std::max(0.0, eig.values[i]);
    total += clipped[i];
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (clipped[i] == 0.0) continue;
    const ComplexMatrix v = eig.vectors.col(i);
    out += (clipped[i] / total) * outer_projector(v);
  }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return DensityMatrix(std::move(out));
}

/// Linear inversion through the operator set, with optional projection onto
/// physical states and diagnostics against a reference state.
inline ReconstructionReport reconstruct_from_record(
    const MeasurementRecord& m, const OperatorSet& s, bool project,
    const std::optional<DensityMatrix>& reference = std::nullopt) {
  if (m.dim != s.dim || m.probabilities.size() != s.classes.size()) {
    throw DimensionMismatch("reconstruct_from_record: record does not match set");
  }
  DensityMatrix raw =
      reconstruct(coefficients_from_probabilities(m, s.coefficients), s);
  const double raw_min = raw.min_eigenvalue();
  DensityMatrix estimate = project ? project_to_physical(raw.matrix()) : raw;
  ReconstructionReport rep{std::move(estimate), std::nullopt, std::nullopt,
                           m.shots,             project,      raw_min};
  if (reference) {
    if (reference->dim() != s.dim) {
      throw DimensionMismatch("reference state dimension");
    }
    rep.trace_distance = trace_distance(rep.estimate, *reference);
    if (is_pure(*reference)) rep.fidelity = fidelity(*reference, rep.estimate);
  }
  return rep;
}

}  // namespace mubkit

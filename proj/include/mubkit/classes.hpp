#pragma once

// Mutually disjoint, maximally commuting operator classes built from a
// complete MUB family: every basis contributes d-1 commuting traceless
// observables sum_i c_k[i] |b_i><b_i|, where c_k is the diagonal of tau^k_0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/report.hpp"
#include "mubkit/tensors.hpp"

namespace mubkit {

/// d-1 real vectors of length d; vector k-1 is the diagonal of tau^k_0.
/// Each sums to zero, they are pairwise orthogonal, and each has squared
/// norm d.
struct CoefficientVectors {
  int dim = 0;
  std::vector<std::vector<double>> vectors;
};

inline CoefficientVectors coefficient_vectors(int d) {
  if (d < 2 || d > kMaxTwoJ + 1) {
    throw UnsupportedDimension(d, DimensionIssue::out_of_range,
                               "coefficient vectors need 2 <= d <= " +
                                   std::to_string(kMaxTwoJ + 1));
  }
  const SpinLabel spin = SpinLabel::from_dim(d);
  CoefficientVectors c{d, {}};
  for (int k = 1; k < d; ++k) c.vectors.push_back(tensor_diagonal(spin, k));
  return c;
}

/// One basis and the d-1 commuting observables diagonal in it.
struct CommutingClass {
  Basis basis;
  std::vector<ComplexMatrix> operators;
  std::vector<ComplexMatrix> projectors;

  const std::string& basis_label() const noexcept { return basis.label; }
};

inline CommutingClass build_class(const Basis& b, const CoefficientVectors& c) {
  if (b.dim() != c.dim) {
    throw DimensionMismatch("build_class: basis dim " + std::to_string(b.dim()) +
                            ", coefficient dim " + std::to_string(c.dim));
  }
  const auto d = static_cast<std::size_t>(b.dim());
  CommutingClass cls{b, {}, {}};
  cls.projectors.reserve(d);
  for (std::size_t i = 0; i < d; ++i)
    cls.projectors.push_back(outer_projector(b.vector(i)));
  for (const auto& coeffs : c.vectors) {
    ComplexMatrix op(d, d);
    for (std::size_t i = 0; i < d; ++i) op += coeffs[i] * cls.projectors[i];
    cls.operators.push_back(std::move(op));
  }
  return cls;
}

/// A -> u A u^dagger for every operator and projector; the basis is carried
/// along as u b.
inline CommutingClass conjugate_class(const CommutingClass& cls,
                                      const BasisTransform& u) {
  if (cls.basis.dim() != u.dim()) {
    throw DimensionMismatch("conjugate_class: class dim " +
                            std::to_string(cls.basis.dim()) +
                            ", transform dim " + std::to_string(u.dim()));
  }
  const ComplexMatrix udag = adjoint(u.u);
  CommutingClass out{u.apply(cls.basis), {}, {}};
  for (const auto& op : cls.operators) out.operators.push_back(u.u * op * udag);
  for (const auto& p : cls.projectors) out.projectors.push_back(u.u * p * udag);
  return out;
}

/// (d+1) classes x (d-1) operators, flattened class-major.
struct OperatorSet {
  int dim = 0;
  CoefficientVectors coefficients;
  std::vector<CommutingClass> classes;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.operators.size();
    return n;
  }

  std::vector<ComplexMatrix> flat() const {
    std::vector<ComplexMatrix> out;
    out.reserve(size());
    for (const auto& c : classes)
      out.insert(out.end(), c.operators.begin(), c.operators.end());
    return out;
  }
};

/// Raised when build_set is handed a family that fails check_family.
class InvalidFamily : public std::invalid_argument {
 public:
  InvalidFamily(const std::string& what, Report report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

inline OperatorSet build_set(const MubFamily& f, Tolerance tol = {}) {
  Report check = check_family(f, tol);
  if (!check.passed()) {
    throw InvalidFamily("build_set: family of dim " + std::to_string(f.dim) +
                            " is not a complete MUB family",
                        std::move(check));
  }
  OperatorSet s{f.dim, coefficient_vectors(f.dim), {}};
  for (const Basis& b : f.bases) s.classes.push_back(build_class(b, s.coefficients));
  return s;
}

/// Complete operator set for dimension d, refusing dimensions without a
/// known complete MUB family.
inline OperatorSet build_operator_set(int d,
                                      FamilySource source = FamilySource::automatic,
                                      Tolerance tol = {}) {
  return build_set(make_family(d, source), tol);
}

namespace detail {

/// Determinant of a square complex matrix by partial-pivot elimination.
inline Complex determinant(ComplexMatrix a) {
  const std::size_t n = a.rows();
  Complex det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == Complex{}) return {};
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      if (f == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

}  // namespace detail

/// Checks every claimed property of the set:
///   hermiticity, tracelessness, hs_orthogonality (Tr(a_i^dag a_j) = d delta),
///   class_commutation, eigen_relation (op_k b_i = c_k[i] b_i),
///   cross_class_noncommutation (witness per class pair), completeness.
inline Report verify_set(const OperatorSet& s, Tolerance tol = {}) {
  Report r;
  const auto d = static_cast<std::size_t>(s.dim);
  const std::vector<ComplexMatrix> ops = s.flat();
  const double eps = tol.eps();

  double herm = 0.0, tr = 0.0;
  for (const auto& op : ops) {
    herm = std::max(herm, max_abs_diff(op, adjoint(op)));
    tr = std::max(tr, std::abs(trace(op)));
  }
  r.add("hermiticity", herm, herm <= eps);
  r.add("tracelessness", tr, tr <= eps);

  double orth = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t k = i; k < ops.size(); ++k) {
      const Complex target = (i == k) ? Complex(static_cast<double>(d)) : Complex{};
      orth = std::max(orth, std::abs(hs_inner(ops[i], ops[k]) - target));
    }
  r.add("hs_orthogonality", orth, orth <= eps);

  double comm = 0.0;
  for (const auto& cls : s.classes)
    for (std::size_t i = 0; i < cls.operators.size(); ++i)
      for (std::size_t k = i + 1; k < cls.operators.size(); ++k)
        comm = std::max(comm, max_abs(commutator(cls.operators[i], cls.operators[k])));
  r.add("class_commutation", comm, comm <= eps);

  double eig = 0.0;
  bool eig_shapes_ok = true;
  for (const auto& cls : s.classes) {
    if (cls.operators.size() != s.coefficients.vectors.size() ||
        cls.basis.dim() != s.dim) {
      eig_shapes_ok = false;
      continue;
    }
    for (std::size_t k = 0; k < cls.operators.size(); ++k)
      for (std::size_t i = 0; i < d; ++i) {
        const ComplexMatrix v = cls.basis.vector(i);
        const ComplexMatrix residual =
            cls.operators[k] * v - s.coefficients.vectors[k][i] * v;
        eig = std::max(eig, max_abs(residual));
      }
  }
  r.add("eigen_relation", eig_shapes_ok ? eig : 1.0, eig_shapes_ok && eig <= eps);

  // weakest witness over class pairs: max commutator between the two classes
  double weakest = s.classes.size() < 2 ? 0.0 : INFINITY;
  for (std::size_t a = 0; a < s.classes.size(); ++a)
    for (std::size_t b = a + 1; b < s.classes.size(); ++b) {
      double strongest = 0.0;
      for (const auto& x : s.classes[a].operators) {
        for (const auto& y : s.classes[b].operators) {
          strongest = std::max(strongest, max_abs(commutator(x, y)));
          if (strongest > eps) break;
        }
        if (strongest > eps) break;
      }
      weakest = std::min(weakest, strongest);
    }
  r.add("cross_class_noncommutation", weakest,
        s.classes.size() >= 2 && weakest > eps);

  // Gram matrix of {I, ops} normalized by d; ideal determinant is 1.
  const std::size_t expected = d * d - 1;
  std::vector<ComplexMatrix> span_set;
  span_set.reserve(ops.size() + 1);
  span_set.push_back(ComplexMatrix::identity(d));
  span_set.insert(span_set.end(), ops.begin(), ops.end());
  ComplexMatrix gram(span_set.size(), span_set.size());
  for (std::size_t i = 0; i < span_set.size(); ++i)
    for (std::size_t k = 0; k < span_set.size(); ++k)
      gram(i, k) = hs_inner(span_set[i], span_set[k]) / static_cast<double>(d);
  const double det = ops.size() == expected ? detail::determinant(gram).real() : 0.0;
  r.add("completeness", std::abs(1.0 - det),
        ops.size() == expected && det >= 0.5);
  return r;
}

}  // namespace mubkit

#pragma once

// Hermitian eigendecomposition, delegated to Eigen.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"

namespace mubkit::detail {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("eigendecomposition of non-square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      a(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  // symmetrize so round-off asymmetry cannot leak into the solver
  const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigendecomposition did not converge");
  }
  HermitianEigen out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + n);
  out.vectors = ComplexMatrix(m.rows(), m.rows());
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out.vectors(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          solver.eigenvectors()(r, c);
  return out;
}

}  // namespace mubkit::detail

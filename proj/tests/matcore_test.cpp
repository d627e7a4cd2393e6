#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mubkit/matcore.hpp"
#include "oracles.hpp"

namespace {

using namespace mubkit;

TEST(Tolerance, DefaultAndValidation) {
  EXPECT_DOUBLE_EQ(Tolerance{}.eps(), 1e-10);
  EXPECT_DOUBLE_EQ(Tolerance(1e-6).eps(), 1e-6);
  EXPECT_THROW(Tolerance(0.0), std::invalid_argument);
  EXPECT_THROW(Tolerance(-1e-3), std::invalid_argument);
  EXPECT_THROW(Tolerance(1.0), std::invalid_argument);
  EXPECT_THROW(Tolerance(std::nan("")), std::invalid_argument);
}

TEST(ComplexMatrix, ConstructionChecks) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionMismatch);
  std::vector<Complex> bad(4);
  bad[2] = {std::numeric_limits<double>::infinity(), 0.0};
  EXPECT_THROW(ComplexMatrix(2, 2, bad), std::invalid_argument);
  const ComplexMatrix m(2, 3);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_FALSE(m.is_square());
}

TEST(ComplexMatrix, ShapeMismatchThrows) {
  ComplexMatrix a(2, 2), b(3, 3), c(2, 3);
  EXPECT_THROW(a += b, DimensionMismatch);
  EXPECT_THROW(multiply(a, b), DimensionMismatch);
  EXPECT_THROW(trace(c), DimensionMismatch);
  EXPECT_THROW(hs_inner(a, b), DimensionMismatch);
  EXPECT_THROW(commutator(a, c), DimensionMismatch);
  EXPECT_THROW(is_hermitian(c), DimensionMismatch);
}

TEST(ComplexMatrix, TwoByTwoProduct) {
  const Complex i{0, 1};
  const auto p = oracle::pauli_zxy();
  // sigma_z sigma_x = i sigma_y
  EXPECT_LE(max_abs_diff(p[0] * p[1], i * p[2]), 1e-15);
  EXPECT_LE(max_abs_diff(commutator(p[1], p[2]), 2.0 * i * p[0]), 1e-15);
}

class MatcoreProperty : public ::testing::TestWithParam<int> {};

TEST_P(MatcoreProperty, AdjointIsAnInvolution) {
  const auto a = oracle::random_matrix(5, 3, GetParam());
  EXPECT_EQ(adjoint(adjoint(a)), a);
}

TEST_P(MatcoreProperty, AdjointReversesProducts) {
  const auto a = oracle::random_matrix(4, 4, GetParam());
  const auto b = oracle::random_matrix(4, 4, GetParam() + 100);
  EXPECT_LE(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)), 1e-13);
}

TEST_P(MatcoreProperty, TraceIsCyclic) {
  const auto a = oracle::random_matrix(4, 4, GetParam());
  const auto b = oracle::random_matrix(4, 4, GetParam() + 7);
  EXPECT_LE(std::abs(trace(a * b) - trace(b * a)), 1e-12);
}

TEST_P(MatcoreProperty, HsInnerIsTraceOfAdjointProduct) {
  const auto a = oracle::random_matrix(5, 5, GetParam());
  const auto b = oracle::random_matrix(5, 5, GetParam() + 1);
  EXPECT_LE(std::abs(hs_inner(a, b) - trace(adjoint(a) * b)), 1e-12);
  EXPECT_LE(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))), 1e-12);
  EXPECT_GE(hs_inner(a, a).real(), 0.0);
}

TEST_P(MatcoreProperty, HermitianParts) {
  const auto h = oracle::random_hermitian(6, GetParam());
  EXPECT_TRUE(is_hermitian(h));
  auto skew = h;
  skew(0, 1) += Complex{0, 1e-6};
  EXPECT_FALSE(is_hermitian(skew));
  EXPECT_TRUE(is_hermitian(skew, Tolerance(1e-5)));
  // Tr(H^2) is real and non-negative
  EXPECT_LE(std::abs(trace(h * h).imag()), 1e-12);
}

TEST_P(MatcoreProperty, CommutatorIsAntisymmetric) {
  const auto a = oracle::random_matrix(3, 3, GetParam());
  const auto b = oracle::random_matrix(3, 3, GetParam() + 3);
  EXPECT_LE(max_abs_diff(commutator(a, b), -1.0 * commutator(b, a)), 1e-13);
  EXPECT_LE(std::abs(trace(commutator(a, b))), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, MatcoreProperty, ::testing::Range(1, 11));

TEST(RootOfUnity, ExactQuarterTurns) {
  EXPECT_EQ(root_of_unity(4, 1), Complex(0, 1));
  EXPECT_EQ(root_of_unity(4, 2), Complex(-1, 0));
  EXPECT_EQ(root_of_unity(4, 3), Complex(0, -1));
  EXPECT_EQ(root_of_unity(4, -1), Complex(0, -1));
  EXPECT_EQ(root_of_unity(7, 14), Complex(1, 0));
  EXPECT_THROW(root_of_unity(0, 1), std::invalid_argument);
}

TEST(RootOfUnity, PowersSumToZero) {
  for (int d : {3, 5, 7, 11, 13}) {
    Complex s{};
    for (int p = 0; p < d; ++p) s += root_of_unity(d, p);
    EXPECT_LE(std::abs(s), 1e-14) << d;
    EXPECT_LE(std::abs(root_of_unity(d, 1) - std::polar(1.0, 2 * oracle::kPi / d)), 1e-15);
  }
}

TEST(Vectors, InnerAndProjector) {
  const auto v = oracle::random_matrix(4, 1, 9);
  const double n2 = inner(v, v).real();
  const auto p = outer_projector(v);
  EXPECT_TRUE(is_hermitian(p));
  EXPECT_LE(max_abs_diff(p * p, n2 * p), 1e-12);
  EXPECT_LE(std::abs(trace(p) - n2), 1e-12);
  EXPECT_THROW(inner(v, oracle::random_matrix(3, 1, 1)), DimensionMismatch);
}

TEST(Unitary, FourierMatrixIsUnitary) {
  const std::size_t d = 5;
  ComplexMatrix f(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      f(r, c) = root_of_unity(5, static_cast<long long>(r * c)) / std::sqrt(5.0);
  EXPECT_TRUE(is_unitary(f));
  EXPECT_FALSE(is_unitary(2.0 * f));
}

}  // namespace

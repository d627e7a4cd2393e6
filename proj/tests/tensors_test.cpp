#include <gtest/gtest.h>

#include <cmath>

#include "mubkit/tensors.hpp"
#include "oracles.hpp"

namespace {

using namespace mubkit;

// values frozen from an exact symbolic evaluation
TEST(ClebschGordan, KnownValues) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r5 = std::sqrt(5.0),
               r6 = std::sqrt(6.0);
  EXPECT_NEAR(clebsch_gordan(1, 1, 1, 1, 0, 1), 1 / r2, 1e-15);
  EXPECT_NEAR(clebsch_gordan(1.5, 2, 1.5, 1.5, 0, 1.5), 1 / r5, 1e-15);
  EXPECT_NEAR(clebsch_gordan(1, 1, 0, 0, 0, 0), -1 / r3, 1e-15);
  EXPECT_NEAR(clebsch_gordan(1, 1, 2, 1, -1, 0), 1 / r6, 1e-15);
  EXPECT_NEAR(clebsch_gordan(0.5, 0.5, 0, -0.5, 0.5, 0), -1 / r2, 1e-15);
  EXPECT_NEAR(clebsch_gordan(0.5, 0.5, 1, 0.5, 0.5, 1), 1.0, 1e-15);
}

TEST(ClebschGordan, SelectionRulesGiveZero) {
  EXPECT_EQ(clebsch_gordan(1, 1, 1, 1, 1, 1), 0.0);   // m1 + m2 != m
  EXPECT_EQ(clebsch_gordan(1, 1, 3, 1, 0, 1), 0.0);   // triangle
  EXPECT_EQ(clebsch_gordan(1, 1, 1, 0, 0, 0), 0.0);   // parity of j1+j2+j
  EXPECT_THROW(clebsch_gordan(1, 1, 1, 2, 0, 2), std::invalid_argument);
  EXPECT_THROW(clebsch_gordan(1, 0.3, 1, 0, 0, 0), std::invalid_argument);
}

TEST(ClebschGordan, Orthonormality) {
  // sum over m1, m2 of C(j1 j2 J; m1 m2 M) C(j1 j2 J'; m1 m2 M) = delta_JJ'
  for (int tj1 : {1, 2, 3, 4}) {
    for (int tj2 : {1, 2, 5}) {
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
          const int tM = tJ % 2;  // M = 0 or 1/2
          if (tM > tJp) continue;
          double s = 0.0;
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2 || (tj2 - tm2) % 2) continue;
            s += clebsch_gordan_2x(tj1, tj2, tJ, tm1, tm2, tM) *
                 clebsch_gordan_2x(tj1, tj2, tJp, tm1, tm2, tM);
          }
          EXPECT_NEAR(s, tJ == tJp ? 1.0 : 0.0, 1e-13)
              << tj1 << " " << tj2 << " " << tJ << " " << tJp;
        }
      }
    }
  }
}

TEST(SpinLabel, Validation) {
  EXPECT_THROW(SpinLabel(0), UnsupportedDimension);
  EXPECT_THROW(SpinLabel(kMaxTwoJ + 1), UnsupportedDimension);
  const SpinLabel s = SpinLabel::from_dim(4);
  EXPECT_EQ(s.two_j(), 3);
  EXPECT_DOUBLE_EQ(s.j(), 1.5);
  EXPECT_DOUBLE_EQ(s.m(0), 1.5);
  EXPECT_DOUBLE_EQ(s.m(3), -1.5);
}

TEST(SphericalTensor, SpinOneDiagonals) {
  const SpinLabel s(2);
  EXPECT_LE(max_abs_diff(spherical_tensor(s, 1, 0).matrix,
                         oracle::diag({1, 0, -1}, std::sqrt(1.5))),
            1e-12);
  EXPECT_LE(max_abs_diff(spherical_tensor(s, 2, 0).matrix,
                         oracle::diag({1, -2, 1}, 1 / std::sqrt(2.0))),
            1e-12);
}

TEST(SphericalTensor, SpinThreeHalvesDiagonals) {
  const SpinLabel s(3);
  const double r5 = 1 / std::sqrt(5.0);
  EXPECT_LE(max_abs_diff(spherical_tensor(s, 1, 0).matrix, oracle::diag({3, 1, -1, -3}, r5)),
            1e-12);
  EXPECT_LE(max_abs_diff(spherical_tensor(s, 2, 0).matrix, oracle::diag({1, -1, -1, 1})),
            1e-12);
  EXPECT_LE(max_abs_diff(spherical_tensor(s, 3, 0).matrix, oracle::diag({1, -3, 3, -1}, r5)),
            1e-12);
}

TEST(SphericalTensor, DiagonalsMatchOrthogonalPolynomials) {
  for (int d = 2; d <= 8; ++d) {
    const auto expected = oracle::orthogonal_polynomials(d);
    for (int k = 1; k < d; ++k) {
      const auto got = tensor_diagonal(SpinLabel::from_dim(d), k);
      for (int i = 0; i < d; ++i)
        EXPECT_NEAR(got[static_cast<std::size_t>(i)],
                    expected[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)],
                    1e-10)
            << "d=" << d << " k=" << k << " i=" << i;
    }
  }
}

TEST(SphericalTensor, ClosedFormsForSpinOne) {
  const SpinLabel s(2);
  const AngularMomentum J = angular_momentum(s);
  const ComplexMatrix j2 = J.jx * J.jx + J.jy * J.jy + J.jz * J.jz;
  EXPECT_LE(max_abs_diff(j2, 2.0 * ComplexMatrix::identity(3)), 1e-14);
  EXPECT_LE(max_abs_diff(std::sqrt(1.5) * J.jz, spherical_tensor(s, 1, 0).matrix), 1e-12);
  EXPECT_LE(max_abs_diff((1 / std::sqrt(2.0)) * (3.0 * J.jz * J.jz - j2),
                         spherical_tensor(s, 2, 0).matrix),
            1e-12);
}

TEST(SphericalTensor, AngularMomentumAlgebra) {
  for (int tj = 1; tj <= 6; ++tj) {
    const AngularMomentum J = angular_momentum(SpinLabel(tj));
    const Complex i{0, 1};
    EXPECT_LE(max_abs_diff(commutator(J.jx, J.jy), i * J.jz), 1e-13);
    EXPECT_LE(max_abs_diff(commutator(J.jy, J.jz), i * J.jx), 1e-13);
    EXPECT_LE(max_abs_diff(commutator(J.jz, J.jx), i * J.jy), 1e-13);
  }
}

TEST(SphericalTensor, HsOrthonormalAndConjugationSymmetric) {
  for (int tj : {1, 2, 3, 4}) {
    const SpinLabel s(tj);
    const double d = s.dim();
    std::vector<SphericalTensor> all;
    for (int k = 0; k <= tj; ++k)
      for (int q = -k; q <= k; ++q) all.push_back(spherical_tensor(s, k, q));
    ASSERT_EQ(all.size(), static_cast<std::size_t>(s.dim() * s.dim()));
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = 0; b < all.size(); ++b)
        EXPECT_LE(std::abs(hs_inner(all[a].matrix, all[b].matrix) - (a == b ? d : 0.0)),
                  1e-12);
      const auto& t = all[a];
      const double sign = t.q % 2 == 0 ? 1.0 : -1.0;
      EXPECT_LE(max_abs_diff(adjoint(t.matrix), sign * spherical_tensor(s, t.k, -t.q).matrix),
                1e-13);
    }
    // tau^0_0 is the identity
    EXPECT_LE(max_abs_diff(all[0].matrix, ComplexMatrix::identity(s.dim())), 1e-14);
  }
}

TEST(SphericalTensor, RankAndProjectionChecks) {
  EXPECT_THROW(spherical_tensor(SpinLabel(2), 3, 0), std::invalid_argument);
  EXPECT_THROW(spherical_tensor(SpinLabel(2), 1, 2), std::invalid_argument);
  EXPECT_THROW(weyl_tensor(SpinLabel(2), 1, 1), std::invalid_argument);
}

TEST(SphericalTensor, LargestSpinStaysAccurate) {
  const SpinLabel s(kMaxTwoJ);
  for (int k : {1, 12, 25}) {
    const auto t = spherical_tensor(s, k, 0);
    EXPECT_NEAR(hs_inner(t.matrix, t.matrix).real(), s.dim(), 1e-11) << k;
    EXPECT_NEAR(trace(t.matrix).real(), 0.0, 1e-11) << k;
  }
}

class WeylRoute : public ::testing::TestWithParam<int> {};

TEST_P(WeylRoute, AgreesWithClebschGordanRoute) {
  const SpinLabel s(GetParam());
  for (int k = 0; k <= s.two_j(); ++k)
    EXPECT_LE(max_abs_diff(weyl_tensor(s, k, 0), spherical_tensor(s, k, 0).matrix), 1e-11)
        << "2j=" << s.two_j() << " k=" << k;
}

INSTANTIATE_TEST_SUITE_P(Spins, WeylRoute, ::testing::Range(1, 9));

TEST(SphericalTensor, RankThreePolynomialReadingsAreRecorded) {
  const SpinLabel s(3);
  const ComplexMatrix target = spherical_tensor(s, 3, 0).matrix;
  const ComplexMatrix product = tau3_closed_form(s, Tau3Reading::product);
  const ComplexMatrix difference = tau3_closed_form(s, Tau3Reading::difference);
  // neither reading reproduces tau^3_0; this pins the observed outcome
  EXPECT_GT(max_abs_diff(product, target), 1e-3);
  EXPECT_GT(max_abs_diff(difference, target), 1e-3);
  EXPECT_TRUE(is_hermitian(difference));
  EXPECT_THROW(tau3_closed_form(SpinLabel(2)), std::invalid_argument);
}

}  // namespace

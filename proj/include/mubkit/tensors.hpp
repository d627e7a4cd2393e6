#pragma once

// Clebsch-Gordan coefficients and Fano spherical tensor operators tau^k_q
// (Madison normalization [k] = sqrt(2k+1)), with two independent routes to
// the diagonal tensors: the CG matrix-element formula and the Weyl
// symmetrized-polynomial construction.

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"

namespace mubkit {

/// Largest supported 2j (j = 25/2).
inline constexpr int kMaxTwoJ = 25;

/// Spin j carried as the integer 2j; the space has d = 2j + 1 states.
class SpinLabel {
 public:
  explicit SpinLabel(int two_j) : two_j_(two_j) {
    if (two_j < 1 || two_j > kMaxTwoJ) {
      throw UnsupportedDimension(two_j + 1, DimensionIssue::out_of_range,
                                 "spin needs 1 <= 2j <= " +
                                     std::to_string(kMaxTwoJ));
    }
  }

  static SpinLabel from_dim(int d) { return SpinLabel(d - 1); }

  int two_j() const noexcept { return two_j_; }
  int dim() const noexcept { return two_j_ + 1; }
  double j() const noexcept { return 0.5 * two_j_; }
  /// m of canonical index i (m-descending).
  double m(int i) const noexcept { return j() - i; }

  friend bool operator==(SpinLabel, SpinLabel) = default;

 private:
  int two_j_;
};

namespace detail {

inline const std::array<double, 4 * kMaxTwoJ>& factorial_table() {
  static const std::array<double, 4 * kMaxTwoJ> table = [] {
    std::array<double, 4 * kMaxTwoJ> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table;
}

inline double factorial(int n) {
  const auto& t = factorial_table();
  if (n < 0 || static_cast<std::size_t>(n) >= t.size()) {
    throw std::out_of_range("factorial argument " + std::to_string(n));
  }
  return t[static_cast<std::size_t>(n)];
}

inline int doubled(double x, const char* name) {
  const double twice = 2.0 * x;
  const double r = std::round(twice);
  if (!std::isfinite(x) || std::abs(twice - r) > 1e-12) {
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(x) +
                                " is not a half-integer");
  }
  return static_cast<int>(r);
}

}  // namespace detail

/// C(j1 j2 j; m1 m2 m) with every argument passed doubled (2j, 2m).
/// Racah's closed-form factorial sum. Zero when m1 + m2 != m or the triangle
/// condition fails.
inline double clebsch_gordan_2x(int tj1, int tj2, int tj, int tm1, int tm2,
                                int tm) {
  if (tj1 < 0 || tj2 < 0 || tj < 0) {
    throw std::invalid_argument("clebsch_gordan: negative angular momentum");
  }
  auto check_projection = [](int tjx, int tmx) {
    if (std::abs(tmx) > tjx || (tjx - tmx) % 2 != 0) {
      throw std::invalid_argument(
          "clebsch_gordan: projection " + std::to_string(tmx) +
          "/2 incompatible with angular momentum " + std::to_string(tjx) + "/2");
    }
  };
  check_projection(tj1, tm1);
  check_projection(tj2, tm2);
  check_projection(tj, tm);

  if (tm1 + tm2 != tm) return 0.0;
  if (tj < std::abs(tj1 - tj2) || tj > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj) % 2 != 0) return 0.0;

  using detail::factorial;
  const int a = (tj1 + tj2 - tj) / 2;
  const int b = (tj1 - tj2 + tj) / 2;
  const int c = (-tj1 + tj2 + tj) / 2;
  const double prefactor =
      (tj + 1) * factorial(a) * factorial(b) * factorial(c) /
      factorial((tj1 + tj2 + tj) / 2 + 1) * factorial((tj1 + tm1) / 2) *
      factorial((tj1 - tm1) / 2) * factorial((tj2 + tm2) / 2) *
      factorial((tj2 - tm2) / 2) * factorial((tj + tm) / 2) *
      factorial((tj - tm) / 2);

  const int e1 = (tj1 - tm1) / 2;
  const int e2 = (tj2 + tm2) / 2;
  const int e3 = (tj - tj2 + tm1) / 2;
  const int e4 = (tj - tj1 - tm2) / 2;
  const int k_lo = std::max({0, -e3, -e4});
  const int k_hi = std::min({a, e1, e2});
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double term = 1.0 / (factorial(k) * factorial(a - k) *
                               factorial(e1 - k) * factorial(e2 - k) *
                               factorial(e3 + k) * factorial(e4 + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return std::sqrt(prefactor) * sum;
}

/// Half-integer front end; rejects arguments that are not multiples of 1/2.
inline double clebsch_gordan(double j1, double j2, double j, double m1,
                             double m2, double m) {
  return clebsch_gordan_2x(detail::doubled(j1, "j1"), detail::doubled(j2, "j2"),
                           detail::doubled(j, "j"), detail::doubled(m1, "m1"),
                           detail::doubled(m2, "m2"), detail::doubled(m, "m"));
}

struct SphericalTensor {
  SpinLabel spin;
  int k;
  int q;
  ComplexMatrix matrix;
};

/// <j m'| tau^k_q |j m> = sqrt(2k+1) C(j k j; m q m'), rows m', cols m,
/// both m-descending.
inline SphericalTensor spherical_tensor(SpinLabel spin, int k, int q) {
  if (k < 0 || k > spin.two_j()) {
    throw std::invalid_argument("spherical_tensor: rank " + std::to_string(k) +
                                " outside 0.." + std::to_string(spin.two_j()));
  }
  if (std::abs(q) > k) {
    throw std::invalid_argument("spherical_tensor: |q| > k");
  }
  const int tj = spin.two_j();
  const auto d = static_cast<std::size_t>(spin.dim());
  const double bracket = std::sqrt(2.0 * k + 1.0);
  ComplexMatrix m(d, d);
  for (std::size_t row = 0; row < d; ++row) {
    const int tm_row = tj - 2 * static_cast<int>(row);
    for (std::size_t col = 0; col < d; ++col) {
      const int tm_col = tj - 2 * static_cast<int>(col);
      if (tm_col + 2 * q != tm_row) continue;
      m(row, col) =
          bracket * clebsch_gordan_2x(tj, 2 * k, tj, tm_col, 2 * q, tm_row);
    }
  }
  return {spin, k, q, std::move(m)};
}

/// Real diagonal of tau^k_0.
inline std::vector<double> tensor_diagonal(SpinLabel spin, int k) {
  const SphericalTensor t = spherical_tensor(spin, k, 0);
  std::vector<double> diag(static_cast<std::size_t>(spin.dim()));
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = t.matrix(i, i).real();
  return diag;
}

struct AngularMomentum {
  ComplexMatrix jx;
  ComplexMatrix jy;
  ComplexMatrix jz;
};

inline AngularMomentum angular_momentum(SpinLabel spin) {
  const auto d = static_cast<std::size_t>(spin.dim());
  const double j = spin.j();
  ComplexMatrix jz(d, d);
  ComplexMatrix jplus(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const double m = spin.m(static_cast<int>(i));
    jz(i, i) = m;
    if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const ComplexMatrix jminus = adjoint(jplus);
  const Complex two_i{0.0, 2.0};
  return {0.5 * (jplus + jminus), (jplus - jminus) * (1.0 / two_i),
          std::move(jz)};
}

enum class Tau3Reading {
  product,     // 4Jz^3 - (Sx)(Sy), the groups multiplied as typeset
  difference,  // 4Jz^3 - Sx - Sy
};

/// The rank-3 spin-3/2 operator polynomial
///   (1 / (3 sqrt 5)) [4 Jz^3 - Sx . Sy],
/// Sa = Jz Ja^2 + Ja^2 Jz + Ja Jz Ja, under either reading of the bracket.
/// Kept for comparison against spherical_tensor(3/2, 3, 0); neither reading
/// reproduces it.
inline ComplexMatrix tau3_closed_form(SpinLabel spin,
                                      Tau3Reading reading = Tau3Reading::product) {
  if (spin.two_j() != 3) {
    throw std::invalid_argument("tau3_closed_form is defined for j = 3/2 only");
  }
  const AngularMomentum J = angular_momentum(spin);
  auto sym = [&](const ComplexMatrix& a) {
    const ComplexMatrix a2 = a * a;
    return J.jz * a2 + a2 * J.jz + a * J.jz * a;
  };
  const ComplexMatrix sx = sym(J.jx);
  const ComplexMatrix sy = sym(J.jy);
  const ComplexMatrix jz3 = J.jz * J.jz * J.jz;
  const ComplexMatrix bracket = reading == Tau3Reading::product
                                    ? 4.0 * jz3 - sx * sy
                                    : 4.0 * jz3 - sx - sy;
  return (1.0 / (3.0 * std::sqrt(5.0))) * bracket;
}

/// Weyl construction tau^k_0 = N_kj (J . grad)^k r^k Y^k_0, with
/// N_kj = (2^k / k!) sqrt(4 pi (2j-k)! (2j+1) / (2j+k+1)!).
/// (J . grad)^k maps the monomial x^a y^b z^c to a! b! c! times the sum of
/// all distinct operator words with a Jx's, b Jy's and c Jz's.
inline ComplexMatrix weyl_tensor(SpinLabel spin, int k, int q) {
  if (q != 0) {
    throw std::invalid_argument("weyl_tensor is implemented for q = 0 only");
  }
  if (k < 0 || k > spin.two_j()) {
    throw std::invalid_argument("weyl_tensor: rank outside 0..2j");
  }
  using detail::factorial;
  const AngularMomentum J = angular_momentum(spin);
  const auto d = static_cast<std::size_t>(spin.dim());

  std::map<std::tuple<int, int, int>, ComplexMatrix> words;
  auto word_sum = [&](auto&& self, int a, int b, int c) -> const ComplexMatrix& {
    const auto key = std::make_tuple(a, b, c);
    if (auto it = words.find(key); it != words.end()) return it->second;
    ComplexMatrix s(d, d);
    if (a + b + c == 0) {
      s = ComplexMatrix::identity(d);
    } else {
      if (a > 0) s += J.jx * self(self, a - 1, b, c);
      if (b > 0) s += J.jy * self(self, a, b - 1, c);
      if (c > 0) s += J.jz * self(self, a, b, c - 1);
    }
    return words.emplace(key, std::move(s)).first->second;
  };

  // r^k P_k(cos theta) = sum_l coef_l z^{k-2l} (x^2 + y^2 + z^2)^l
  ComplexMatrix poly(d, d);
  for (int l = 0; 2 * l <= k; ++l) {
    const double coef_l = ((l % 2 == 0) ? 1.0 : -1.0) * factorial(2 * k - 2 * l) /
                          (std::pow(2.0, k) * factorial(l) * factorial(k - l) *
                           factorial(k - 2 * l));
    for (int a = 0; a <= l; ++a) {
      for (int b = 0; a + b <= l; ++b) {
        const int c = l - a - b;
        const double multinomial =
            factorial(l) / (factorial(a) * factorial(b) * factorial(c));
        const int px = 2 * a, py = 2 * b, pz = k - 2 * l + 2 * c;
        const double weight = coef_l * multinomial * factorial(px) *
                              factorial(py) * factorial(pz);
        poly += weight * word_sum(word_sum, px, py, pz);
      }
    }
  }

  const int tj = spin.two_j();
  const double norm_kj =
      std::pow(2.0, k) / factorial(k) *
      std::sqrt(4.0 * std::numbers::pi * factorial(tj - k) * (tj + 1) /
                factorial(tj + k + 1));
  const double ylm_norm = std::sqrt((2.0 * k + 1.0) / (4.0 * std::numbers::pi));
  return (norm_kj * ylm_norm) * poly;
}

}  // namespace mubkit

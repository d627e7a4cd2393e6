#pragma once

// Seeded, platform-independent random draws. std::mt19937_64's output
// sequence is fixed by the standard; the distributions on top of it are
// written here because the std:: ones are implementation-defined.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace mubkit {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one value per call; the pair's second
  /// member is cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

// log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(sqrt(2 pi))]
inline double stirling_tail(double k) {
  static constexpr double kTail[] = {
      0.0810614667953272,  0.0413406959554092,  0.0276779256849983,
      0.02079067210376509, 0.0166446911898211,  0.0138761288230707,
      0.0118967099458917,  0.0104112652619720,  0.00925546218271273,
      0.00833056343336287};
  if (k <= 9) return kTail[static_cast<int>(k)];
  const double kp1sq = (k + 1) * (k + 1);
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / (k + 1);
}

// Sequential search from 0; for small n*p.
inline std::uint64_t binomial_inversion(Rng& rng, std::uint64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = (static_cast<double>(n) + 1) * s;
  double r = std::pow(q, static_cast<double>(n));
  double u = rng.uniform();
  std::uint64_t x = 0;
  while (u > r) {
    u -= r;
    ++x;
    if (x > n) {  // rounding leftovers; restart
      x = 0;
      r = std::pow(q, static_cast<double>(n));
      u = rng.uniform();
      continue;
    }
    r *= (a / static_cast<double>(x) - s);
  }
  return x;
}

// Hormann's transformed rejection with decomposition (BTRD), p <= 1/2,
// n*p >= 10.
inline std::uint64_t binomial_btrd(Rng& rng, std::uint64_t n_int, double p) {
  const double n = static_cast<double>(n_int);
  const double q = 1.0 - p;
  const double spq = std::sqrt(n * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor((n + 1) * p);
  const double r = p / q;
  while (true) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2 * a / us + b) * u + c);
    if (k < 0 || k > n) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound =
        (m + 0.5) * std::log((m + 1) / (r * (n - m + 1))) +
        (n + 1) * std::log((n - m + 1) / (n - k + 1)) +
        (k + 0.5) * std::log(r * (n - k + 1) / (k + 1)) + stirling_tail(m) +
        stirling_tail(n - m) - stirling_tail(k) - stirling_tail(n - k);
    if (v <= bound) return static_cast<std::uint64_t>(k);
  }
}

}  // namespace detail

/// One Binomial(n, p) draw.
inline std::uint64_t binomial(Rng& rng, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial: probability outside [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  const bool flip = p > 0.5;
  const double pp = flip ? 1.0 - p : p;
  const std::uint64_t x = static_cast<double>(n) * pp < 10.0
                              ? detail::binomial_inversion(rng, n, pp)
                              : detail::binomial_btrd(rng, n, pp);
  return flip ? n - x : x;
}

/// Counts of n categorical draws with probabilities p (normalized here),
/// by conditional binomials.
inline std::vector<std::uint64_t> multinomial(Rng& rng, std::uint64_t n,
                                              std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("multinomial: negative or non-finite weight");
    }
    total += x;
  }
  if (total <= 0.0) throw std::invalid_argument("multinomial: all weights zero");
  std::vector<std::uint64_t> counts(p.size(), 0);
  std::uint64_t remaining = n;
  double mass_left = total;
  for (std::size_t i = 0; i + 1 < p.size() && remaining > 0; ++i) {
    if (p[i] <= 0.0) continue;
    const double pi = std::min(1.0, p[i] / mass_left);
    counts[i] = binomial(rng, remaining, pi);
    remaining -= counts[i];
    mass_left -= p[i];
    if (mass_left <= 0.0) break;
  }
  if (!p.empty()) {
    // whatever is left lands in the last category with positive weight
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] <= 0.0) --last;
    counts[last] += remaining;
  }
  return counts;
}

}  // namespace mubkit

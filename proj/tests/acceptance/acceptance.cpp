// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and time limits are fixed here on purpose.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mubkit/classes.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/tensors.hpp"
#include "mubkit/tomography.hpp"
#include "../oracles.hpp"

namespace {

using namespace mubkit;
using Clock = std::chrono::steady_clock;

constexpr double kTight = 1e-12;
constexpr double kRoundTrip = 1e-10;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double diag_deviation(const ComplexMatrix& m, const std::vector<double>& v, double scale) {
  return max_abs_diff(m, oracle::diag(v, scale));
}

// 1
Outcome golden_matrices() {
  const auto t0 = Clock::now();
  const auto ops = build_set(paper_family(3)).flat();
  const double elapsed = seconds_since(t0);
  const auto golden = oracle::alpha_hat();
  double worst = ops.size() == golden.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(ops.size(), golden.size()); ++i)
    worst = std::max(worst, max_abs_diff(ops[i], golden[i]));
  const Complex entry = -Complex(0, 1) * oracle::w3(1) / std::sqrt(2.0);
  const double e12 = std::abs(ops.at(2)(0, 1) - entry);
  return {worst <= kTight && e12 <= kTight && elapsed < 1.0,
          "max dev " + fmt("%.2e", worst) + ", alpha_3(1,2) dev " + fmt("%.2e", e12) +
              ", " + fmt("%.3f", elapsed) + " s"};
}

// 2
Outcome spin_half() {
  const auto ops = build_set(paper_family(2)).flat();
  const auto pauli = oracle::pauli_zxy();
  double worst = ops.size() == 3 ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < std::min<std::size_t>(3, ops.size()); ++k)
    worst = std::max(worst, max_abs_diff(ops[k], pauli[k]));
  return {worst <= kTight, "max dev from (sz, sx, sy) " + fmt("%.2e", worst)};
}

// 3
Outcome diagonal_tensors(std::vector<std::string>& lines) {
  const double r2 = 1 / std::sqrt(2.0), r5 = 1 / std::sqrt(5.0);
  const SpinLabel one(2), three_halves(3), two(4);
  const double d1 =
      std::max(diag_deviation(spherical_tensor(one, 1, 0).matrix, {1, 0, -1}, std::sqrt(1.5)),
               diag_deviation(spherical_tensor(one, 2, 0).matrix, {1, -2, 1}, r2));
  const double d32 = std::max(
      {diag_deviation(spherical_tensor(three_halves, 1, 0).matrix, {3, 1, -1, -3}, r5),
       diag_deviation(spherical_tensor(three_halves, 2, 0).matrix, {1, -1, -1, 1}, 1.0),
       diag_deviation(spherical_tensor(three_halves, 3, 0).matrix, {1, -3, 3, -1}, r5)});
  const auto tabulated = oracle::tabulated_spin2_vectors();
  double d2 = 0.0;
  for (int k = 1; k <= 4; ++k)
    d2 = std::max(d2, diag_deviation(spherical_tensor(two, k, 0).matrix,
                                     tabulated[static_cast<std::size_t>(k - 1)], 1.0));
  lines.push_back(std::string(d1 <= kTight ? "PASS" : "FAIL") +
                  "      j=1   tau^1_0, tau^2_0: max dev " + fmt("%.2e", d1));
  lines.push_back(std::string(d32 <= kTight ? "PASS" : "FAIL") +
                  "      j=3/2 tau^1_0..tau^3_0: max dev " + fmt("%.2e", d32));
  lines.push_back(std::string(d2 <= kTight ? "PASS" : "FAIL") +
                  "      j=2   tabulated gamma_1..gamma_4 vs tau^k_0: max dev " +
                  fmt("%.2e", d2));
  return {d1 <= kTight && d32 <= kTight && d2 <= kTight,
          "j=1, j=3/2, j=2 sub-checks below"};
}

// 4
Outcome closed_forms(std::vector<std::string>& lines) {
  const SpinLabel one(2);
  const AngularMomentum J = angular_momentum(one);
  const ComplexMatrix j2 = J.jx * J.jx + J.jy * J.jy + J.jz * J.jz;
  const double a = max_abs_diff(std::sqrt(1.5) * J.jz, spherical_tensor(one, 1, 0).matrix);
  const double b = max_abs_diff((1 / std::sqrt(2.0)) * (3.0 * J.jz * J.jz - j2),
                                spherical_tensor(one, 2, 0).matrix);
  const SpinLabel s(3);
  const ComplexMatrix target = spherical_tensor(s, 3, 0).matrix;
  const double prod = max_abs_diff(tau3_closed_form(s, Tau3Reading::product), target);
  const double diff = max_abs_diff(tau3_closed_form(s, Tau3Reading::difference), target);
  lines.push_back("RECORDED  j=3/2 rank-3 polynomial vs tau^3_0: product reading dev " +
                  fmt("%.4f", prod) + ", difference reading dev " + fmt("%.4f", diff) +
                  (std::max(prod, diff) > kTight ? " (no match)" : ""));
  return {a <= kTight && b <= kTight,
          "sqrt(3/2)Jz dev " + fmt("%.2e", a) + ", (3Jz^2-J^2)/sqrt2 dev " + fmt("%.2e", b)};
}

// 5
Outcome counting() {
  const std::vector<std::pair<int, std::size_t>> want{{2, 3}, {3, 8}, {4, 15}, {5, 24}, {7, 48}};
  bool ok = true;
  std::string got;
  for (auto [d, n] : want) {
    const std::size_t size = build_operator_set(d).size();
    ok = ok && size == n && size == static_cast<std::size_t>(d * d - 1);
    got += (got.empty() ? "" : ", ") + std::to_string(size);
  }
  return {ok, "totals " + got};
}

// 6
Outcome certification() {
  double worst = 0.0;
  bool ok = true;
  auto certify = [&](const MubFamily& f) {
    for (std::size_t a = 0; a < f.bases.size(); ++a)
      for (std::size_t b = a + 1; b < f.bases.size(); ++b)
        worst = std::max(worst, oracle::unbiasedness_deviation(f.bases[a].vectors,
                                                               f.bases[b].vectors));
    ok = ok && check_family(f, Tolerance(kTight)).passed();
  };
  for (int d : {2, 3, 4, 5}) certify(paper_family(d));
  certify(odd_prime_family(7));
  const auto t0 = Clock::now();
  const MubFamily f11 = odd_prime_family(11);
  certify(f11);
  const Report r11 = verify_set(build_set(f11, Tolerance(kTight)), Tolerance(kTight));
  const double elapsed = seconds_since(t0);
  ok = ok && r11.passed();
  return {ok && worst <= kTight && elapsed < 5.0,
          "max overlap dev " + fmt("%.2e", worst) + ", d=11 run " + fmt("%.3f", elapsed) + " s"};
}

// 7
Outcome property_suite() {
  bool ok = true;
  std::string failed;
  auto one = [&](const std::string& name, const MubFamily& f) {
    const OperatorSet s = build_set(f, Tolerance(kTight));
    const Report r = verify_set(s, Tolerance(kTight));
    double route = 0.0;
    for (std::size_t b = 1; b < s.classes.size(); ++b) {
      const CommutingClass via = conjugate_class(
          s.classes[0], unitary_between(s.classes[0].basis, s.classes[b].basis));
      for (std::size_t k = 0; k < via.operators.size(); ++k)
        route = std::max(route, max_abs_diff(via.operators[k], s.classes[b].operators[k]));
    }
    const bool pass = r.passed() && route <= kTight;
    if (!pass) failed += " " + name;
    ok = ok && pass;
  };
  for (int d : {2, 3, 4, 5}) one("paper" + std::to_string(d), paper_family(d));
  for (int d : {3, 5, 7, 11, 13}) one("gen" + std::to_string(d), odd_prime_family(d));
  return {ok, ok ? "d = 2,3,4,5 (tables), 3,5,7,11,13 (generated)" : "failed:" + failed};
}

// 8
Outcome round_trip() {
  double worst = 0.0;
  for (int d : {2, 3, 4, 5, 7}) {
    const MubFamily f = make_family(d);
    const OperatorSet s = build_set(f);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const DensityMatrix rho = random_density(d, derive_stream_seed(2024, t));
      const auto rep = reconstruct_from_record(probabilities(rho, f), s, false, rho);
      worst = std::max(worst, *rep.trace_distance);
    }
  }
  return {worst <= kRoundTrip, "max trace distance " + fmt("%.2e", worst)};
}

// 9
Outcome shot_noise() {
  const auto t0 = Clock::now();
  const MubFamily f = make_family(3);
  const OperatorSet s = build_set(f);
  const int states = 60;
  std::vector<double> coarse, fine;
  for (int t = 0; t < states; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const DensityMatrix rho = random_density(3, derive_stream_seed(99, 2 * trial));
    const MeasurementRecord exact = probabilities(rho, f);
    const std::uint64_t seed = derive_stream_seed(99, 2 * trial + 1);
    coarse.push_back(
        *reconstruct_from_record(sample_shots(exact, 10000, seed), s, false, rho).trace_distance);
    fine.push_back(
        *reconstruct_from_record(sample_shots(exact, 1000000, seed), s, false, rho).trace_distance);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  const double ratio = median(coarse) / median(fine);
  const double elapsed = seconds_since(t0);
  return {ratio >= 5.0 && ratio <= 20.0 && elapsed < 60.0,
          std::to_string(states) + " states, median ratio " + fmt("%.2f", ratio) + ", " +
              fmt("%.2f", elapsed) + " s"};
}

// 10
Outcome refusal() {
  int refused = 0, total = 0;
  auto expect = [&](const std::function<void()>& f) {
    ++total;
    try {
      f();
    } catch (const UnsupportedDimension& e) {
      const std::string msg = e.what();
      if (e.dim() == 6 && e.issue() == DimensionIssue::no_complete_family &&
          msg.find("no complete MUB family known") != std::string::npos &&
          msg.find("Zauner") != std::string::npos)
        ++refused;
    } catch (...) {
    }
  };
  expect([] { require_complete_family_exists(6); });
  expect([] { paper_family(6); });
  expect([] { odd_prime_family(6); });
  expect([] { make_family(6); });
  expect([] { make_family(6, FamilySource::paper); });
  expect([] { make_family(6, FamilySource::generated); });
  expect([] { build_operator_set(6); });
  return {refused == total,
          std::to_string(refused) + "/" + std::to_string(total) + " constructors refuse d=6"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome(std::vector<std::string>&)> run;
  };
  auto plain = [](Outcome (*f)()) {
    return [f](std::vector<std::string>&) { return f(); };
  };
  const std::vector<Criterion> criteria{
      {"golden spin-1 operator matrices", plain(golden_matrices)},
      {"spin-1/2 reduces to Pauli matrices", plain(spin_half)},
      {"diagonal spherical tensors", diagonal_tensors},
      {"closed-form cross-checks", closed_forms},
      {"operator counts d^2-1", plain(counting)},
      {"MUB certification", plain(certification)},
      {"algebraic property suite", plain(property_suite)},
      {"exact tomography round trip", plain(round_trip)},
      {"shot-noise scaling", plain(shot_noise)},
      {"refusal of d=6", plain(refusal)},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> sub;
    Outcome o{false, ""};
    try {
      o = criteria[i].run(sub);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    for (const auto& line : sub) std::printf("          %s\n", line.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

#pragma once

// Built-in MUB tables for d = 2, 3, 4, 5, stored as root-of-unity exponents.
// Each table entry is an exponent p of a root of unity of the given order,
// so entry = w^p / normalization.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mubkit/mub.hpp"

namespace mubkit {

namespace detail {

template <std::size_t N>
using ExponentTable = std::array<std::array<int, N>, N>;

template <std::size_t N>
Basis phase_table(std::string label, int order, double normalization,
                  const ExponentTable<N>& exps) {
  ComplexMatrix v(N, N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      v(r, c) = root_of_unity(order, exps[r][c]) / normalization;
  return Basis(std::move(label), std::move(v));
}

inline Basis labelled_identity(int d) {
  return Basis("B1", ComplexMatrix::identity(static_cast<std::size_t>(d)));
}

// spin-1/2: sigma_z, sigma_x, sigma_y eigenbases. Entries are powers of i.
inline MubFamily table_d2() {
  const double s = std::sqrt(2.0);
  MubFamily f{2, "paper", {labelled_identity(2)}};
  f.bases.push_back(phase_table<2>("B2", 4, s, {{{0, 0}, {0, 2}}}));
  f.bases.push_back(phase_table<2>("B3", 4, s, {{{0, 0}, {1, 3}}}));
  return f;
}

// spin-1, w = exp(2 pi i / 3).
inline MubFamily table_d3() {
  const double s = std::sqrt(3.0);
  MubFamily f{3, "paper", {labelled_identity(3)}};
  f.bases.push_back(
      phase_table<3>("B2", 3, s, {{{0, 0, 0}, {0, 2, 1}, {0, 1, 2}}}));
  f.bases.push_back(
      phase_table<3>("B3", 3, s, {{{0, 0, 0}, {1, 0, 2}, {0, 1, 2}}}));
  f.bases.push_back(
      phase_table<3>("B4", 3, s, {{{0, 0, 0}, {2, 1, 0}, {0, 1, 2}}}));
  return f;
}

// spin-3/2. Entries are powers of i, normalization 1/2.
inline MubFamily table_d4() {
  MubFamily f{4, "paper", {labelled_identity(4)}};
  f.bases.push_back(phase_table<4>(
      "B2", 4, 2.0,
      {{{0, 0, 0, 0}, {0, 2, 0, 2}, {0, 0, 2, 2}, {0, 2, 2, 0}}}));
  f.bases.push_back(phase_table<4>(
      "B3", 4, 2.0,
      {{{0, 0, 0, 0}, {1, 3, 1, 3}, {1, 1, 3, 3}, {2, 0, 0, 2}}}));
  f.bases.push_back(phase_table<4>(
      "B4", 4, 2.0,
      {{{0, 0, 0, 0}, {1, 3, 1, 3}, {0, 0, 2, 2}, {3, 1, 1, 3}}}));
  f.bases.push_back(phase_table<4>(
      "B5", 4, 2.0,
      {{{0, 0, 0, 0}, {0, 2, 0, 2}, {1, 1, 3, 3}, {3, 1, 1, 3}}}));
  return f;
}

// spin-2, w = exp(2 pi i / 5). The source table carries a stray
// 1/sqrt(5) in front of the identity; it is the canonical basis here.
inline MubFamily table_d5() {
  const double s = std::sqrt(5.0);
  MubFamily f{5, "paper", {labelled_identity(5)}};
  f.bases.push_back(phase_table<5>("B2", 5, s,
                                   {{{0, 0, 0, 0, 0},
                                     {0, 1, 2, 3, 4},
                                     {0, 2, 4, 1, 3},
                                     {0, 3, 1, 4, 2},
                                     {0, 4, 3, 2, 1}}}));
  f.bases.push_back(phase_table<5>("B3", 5, s,
                                   {{{0, 0, 0, 0, 0},
                                     {1, 2, 3, 4, 0},
                                     {4, 1, 3, 0, 2},
                                     {4, 2, 0, 3, 1},
                                     {1, 0, 4, 3, 2}}}));
  f.bases.push_back(phase_table<5>("B4", 5, s,
                                   {{{0, 0, 0, 0, 0},
                                     {2, 3, 4, 0, 1},
                                     {3, 0, 2, 4, 1},
                                     {3, 1, 4, 2, 0},
                                     {2, 1, 0, 4, 3}}}));
  f.bases.push_back(phase_table<5>("B5", 5, s,
                                   {{{0, 0, 0, 0, 0},
                                     {3, 4, 0, 1, 2},
                                     {2, 4, 1, 3, 0},
                                     {2, 0, 3, 1, 4},
                                     {3, 2, 1, 0, 4}}}));
  f.bases.push_back(phase_table<5>("B6", 5, s,
                                   {{{0, 0, 0, 0, 0},
                                     {4, 0, 1, 2, 3},
                                     {1, 3, 0, 2, 4},
                                     {1, 4, 2, 0, 3},
                                     {4, 3, 2, 1, 0}}}));
  return f;
}

}  // namespace detail

/// Exact reference MUB tables for d in {2, 3, 4, 5}.
inline MubFamily paper_family(int d) {
  require_complete_family_exists(d);
  switch (d) {
    case 2:
      return detail::table_d2();
    case 3:
      return detail::table_d3();
    case 4:
      return detail::table_d4();
    case 5:
      return detail::table_d5();
    default:
      throw UnsupportedDimension(d, DimensionIssue::no_construction,
                                 "built-in tables cover d = 2, 3, 4, 5 only");
  }
}

inline MubFamily make_family(int d, FamilySource source) {
  switch (source) {
    case FamilySource::paper:
      return paper_family(d);
    case FamilySource::generated:
      return odd_prime_family(d);
    case FamilySource::automatic:
      break;
  }
  require_complete_family_exists(d);
  if (d <= 5) return paper_family(d);
  return odd_prime_family(d);
}

}  // namespace mubkit

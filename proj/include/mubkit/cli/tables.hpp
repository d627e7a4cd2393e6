#pragma once

// Human-readable rendering of the built-in matrices with symbolic entries
// such as "-i*w/sqrt(2)" (w the primitive d-th root of unity).

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mubkit/classes.hpp"
#include "mubkit/matcore.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/tensors.hpp"

namespace mubkit::cli {

/// entry = coefficient * value; printed as coefficient then label.
struct Scale {
  double value;
  std::string label;  // "" for 1
  bool divides;       // "/sqrt(2)" vs "*sqrt(3/2)"
};

inline const std::vector<Scale>& candidate_scales() {
  static const std::vector<Scale> scales = {
      {1.0, "", false},
      {1.0 / std::sqrt(2.0), "sqrt(2)", true},
      {std::sqrt(1.5), "sqrt(3/2)", false},
      {1.0 / std::sqrt(3.0), "sqrt(3)", true},
      {0.5, "2", true},
      {1.0 / std::sqrt(5.0), "sqrt(5)", true},
      {1.0 / std::sqrt(6.0), "sqrt(6)", true},
      {1.0 / 3.0, "3", true},
      {0.25, "4", true},
      {1.0 / (2.0 * std::sqrt(5.0)), "(2*sqrt(5))", true},
      {1.0 / std::sqrt(14.0), "sqrt(14)", true},
      {std::sqrt(5.0 / 14.0), "sqrt(5/14)", false},
  };
  return scales;
}

/// z as [sign][magnitude][i][w^p] with an integer magnitude, if possible.
inline std::optional<std::string> symbolic_unit(Complex z, int root_order) {
  constexpr double kEps = 1e-9;
  const double mag = std::abs(z);
  if (mag < kEps) return "0";
  const double n = std::round(mag);
  if (n < 1 || n > 12 || std::abs(mag - n) > kEps) return std::nullopt;
  const Complex unit = z / n;
  static const Complex signs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int p = 0; p < root_order; ++p) {
    const Complex w = root_of_unity(root_order, p);
    for (int s = 0; s < 4; ++s) {
      if (std::abs(unit - signs[s] * w) > kEps) continue;
      std::vector<std::string> parts;
      if (n != 1) parts.push_back(std::to_string(static_cast<int>(n)));
      if (s >= 2) parts.push_back("i");
      if (p == 1) parts.push_back("w");
      if (p > 1) parts.push_back("w^" + std::to_string(p));
      std::string text = (s == 1 || s == 3) ? "-" : "";
      if (parts.empty()) return text + "1";
      for (std::size_t k = 0; k < parts.size(); ++k)
        text += (k ? "*" : "") + parts[k];
      return text;
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> symbolic_entry(Complex z, const Scale& scale,
                                                 int root_order) {
  const auto coef = symbolic_unit(z / scale.value, root_order);
  if (!coef) return std::nullopt;
  if (*coef == "0" || scale.label.empty()) return coef;
  if (scale.divides) return *coef + "/" + scale.label;
  if (*coef == "1") return scale.label;
  if (*coef == "-1") return "-" + scale.label;
  return *coef + "*" + scale.label;
}

inline std::string numeric_entry(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

/// Renders every entry with the first scale under which all entries are
/// symbolic, falling back to decimals.
inline std::vector<std::vector<std::string>> render_entries(const ComplexMatrix& m,
                                                            int root_order) {
  for (const Scale& scale : candidate_scales()) {
    std::vector<std::vector<std::string>> cells(m.rows());
    bool ok = true;
    for (std::size_t r = 0; r < m.rows() && ok; ++r)
      for (std::size_t c = 0; c < m.cols() && ok; ++c) {
        auto e = symbolic_entry(m(r, c), scale, root_order);
        if (!e) {
          ok = false;
          break;
        }
        cells[r].push_back(*e);
      }
    if (ok) return cells;
  }
  std::vector<std::vector<std::string>> cells(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) cells[r].push_back(numeric_entry(m(r, c)));
  return cells;
}

inline void print_matrix(std::ostream& out, const std::string& name,
                         const ComplexMatrix& m, int root_order) {
  const auto cells = render_entries(m, root_order);
  std::size_t width = 1;
  for (const auto& row : cells)
    for (const auto& c : row) width = std::max(width, c.size());
  out << name << " =\n";
  for (const auto& row : cells) {
    out << "  [";
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : " ");
      out << std::string(width - row[c].size(), ' ') << row[c];
    }
    out << " ]\n";
  }
  out << "\n";
}

namespace detail {

inline void print_family_section(std::ostream& out, int d, int root_order,
                                 const std::vector<std::string>& op_names) {
  const MubFamily f = paper_family(d);
  for (const Basis& b : f.bases) print_matrix(out, b.label, b.vectors, root_order);
  const OperatorSet s = build_set(f);
  const auto ops = s.flat();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string name =
        i < op_names.size() ? op_names[i] : "op_" + std::to_string(i + 1);
    print_matrix(out, name, ops[i], root_order);
  }
}

inline std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + "_" + std::to_string(i));
  return names;
}

}  // namespace detail

/// All built-in tables and the operator sets derived from them.
inline void print_tables(std::ostream& out) {
  out << "== spin-1/2 (d = 2) ==\n\n";
  detail::print_family_section(out, 2, 1, {"sigma_z", "sigma_x", "sigma_y"});

  out << "== spin-1 (d = 3), w = exp(2 pi i / 3) ==\n\n";
  {
    const MubFamily f = paper_family(3);
    print_matrix(out, "U (B1 -> B2)", unitary_between(f.bases[0], f.bases[1]).u, 3);
    const SpinLabel spin(2);
    print_matrix(out, "tau^1_0", spherical_tensor(spin, 1, 0).matrix, 3);
    print_matrix(out, "tau^2_0", spherical_tensor(spin, 2, 0).matrix, 3);
  }
  detail::print_family_section(out, 3, 3, detail::numbered("alpha", 8));

  out << "== spin-3/2 (d = 4) ==\n\n";
  detail::print_family_section(out, 4, 1, detail::numbered("beta", 15));

  out << "== spin-2 (d = 5), w = exp(2 pi i / 5) ==\n\n";
  detail::print_family_section(out, 5, 5, detail::numbered("gamma", 24));
}

}  // namespace mubkit::cli

#pragma once

// On-disk formats. Matrices:
//   {"rows": r, "cols": c, "data": [[{"re": x, "im": y}, ...], ...]}
// written with 17 significant digits so a write/read cycle is lossless.
// Manifests:
//   family.json     {"dim", "source", "bases": [labels], "convention": "m-descending"}
//   operators.json  {"dim", "classes": [{"basis_label", "operators": [files]}]}
//   tensors.json    {"two_j", "tensors": [{"two_j", "k", "q", "file"}]}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mubkit/classes.hpp"
#include "mubkit/errors.hpp"
#include "mubkit/matcore.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/tensors.hpp"
#include "mubkit/tomography.hpp"

namespace mubkit::io {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* kFamilyManifest = "family.json";
inline constexpr const char* kOperatorManifest = "operators.json";
inline constexpr const char* kTensorManifest = "tensors.json";
inline constexpr const char* kConvention = "m-descending";

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string dump_matrix(const ComplexMatrix& m) {
  std::ostringstream out;
  out << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols()
      << ", \"data\": [";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? ",\n  [" : "\n  [");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ", ";
      out << "{\"re\": " << format_real(m(r, c).real())
          << ", \"im\": " << format_real(m(r, c).imag()) << "}";
    }
    out << "]";
  }
  out << "\n]}\n";
  return out.str();
}

inline ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const json& data = j.at("data");
    if (rows == 0 || cols == 0) throw ParseError("matrix with zero extent");
    if (!data.is_array() || data.size() != rows) {
      throw ParseError("matrix data has " + std::to_string(data.size()) +
                       " rows, header says " + std::to_string(rows));
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const json& row : data) {
      if (!row.is_array() || row.size() != cols) {
        throw ParseError("matrix row length does not match cols = " +
                         std::to_string(cols));
      }
      for (const json& z : row)
        entries.emplace_back(z.at("re").get<double>(), z.at("im").get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw ParseError("write failed for " + path.string());
}

inline json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline ComplexMatrix read_matrix(const fs::path& path) {
  try {
    return matrix_from_json(read_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

/// Labels become file-name fragments; anything outside [A-Za-z0-9_-] is
/// replaced.
inline std::string file_stem(const std::string& label) {
  std::string s = label;
  for (char& ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    if (!ok) ch = '_';
  }
  return s;
}

// ---------------------------------------------------------------------------
// families

inline std::vector<fs::path> write_family(const fs::path& dir, const MubFamily& f) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  json labels = json::array();
  for (const Basis& b : f.bases) {
    const fs::path file = dir / ("basis_" + file_stem(b.label) + ".json");
    write_text(file, dump_matrix(b.vectors));
    written.push_back(file);
    labels.push_back(b.label);
  }
  const json manifest = {{"dim", f.dim},
                         {"source", f.source},
                         {"bases", labels},
                         {"convention", kConvention}};
  const fs::path mpath = dir / kFamilyManifest;
  write_text(mpath, manifest.dump(2) + "\n");
  written.push_back(mpath);
  return written;
}

inline MubFamily read_family(const fs::path& dir) {
  const json manifest = read_json(dir / kFamilyManifest);
  try {
    MubFamily f;
    f.dim = manifest.at("dim").get<int>();
    f.source = manifest.value("source", std::string{});
    if (manifest.contains("convention") &&
        manifest.at("convention").get<std::string>() != kConvention) {
      throw ParseError("unsupported index convention '" +
                       manifest.at("convention").get<std::string>() + "'");
    }
    for (const json& label : manifest.at("bases")) {
      const auto name = label.get<std::string>();
      ComplexMatrix v = read_matrix(dir / ("basis_" + file_stem(name) + ".json"));
      if (!v.is_square()) throw ParseError("basis " + name + " is not square");
      f.bases.emplace_back(name, std::move(v));
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string(kFamilyManifest) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// operator sets

inline std::string operator_file(const std::string& basis_label, std::size_t k) {
  return "op_" + file_stem(basis_label) + "_" + std::to_string(k + 1) + ".json";
}

/// Writes the family alongside, so the set can be fully re-verified.
inline std::vector<fs::path> write_operator_set(const fs::path& dir,
                                                const OperatorSet& s) {
  MubFamily f{s.dim, {}, {}};
  for (const auto& cls : s.classes) f.bases.push_back(cls.basis);
  std::vector<fs::path> written = write_family(dir, f);
  json classes = json::array();
  for (const auto& cls : s.classes) {
    json files = json::array();
    for (std::size_t k = 0; k < cls.operators.size(); ++k) {
      const std::string name = operator_file(cls.basis_label(), k);
      write_text(dir / name, dump_matrix(cls.operators[k]));
      written.push_back(dir / name);
      files.push_back(name);
    }
    classes.push_back({{"basis_label", cls.basis_label()}, {"operators", files}});
  }
  const json manifest = {{"dim", s.dim}, {"classes", classes}};
  write_text(dir / kOperatorManifest, manifest.dump(2) + "\n");
  written.push_back(dir / kOperatorManifest);
  return written;
}

inline OperatorSet read_operator_set(const fs::path& dir, const MubFamily& f) {
  const json manifest = read_json(dir / kOperatorManifest);
  try {
    OperatorSet s;
    s.dim = manifest.at("dim").get<int>();
    if (s.dim != f.dim) {
      throw ParseError("operators.json dim " + std::to_string(s.dim) +
                       " does not match family dim " + std::to_string(f.dim));
    }
    s.coefficients = coefficient_vectors(s.dim);
    for (const json& cj : manifest.at("classes")) {
      const auto label = cj.at("basis_label").get<std::string>();
      const Basis* basis = nullptr;
      for (const Basis& b : f.bases)
        if (b.label == label) basis = &b;
      if (!basis) throw ParseError("operators.json references unknown basis " + label);
      CommutingClass cls{*basis, {}, {}};
      for (std::size_t i = 0; i < static_cast<std::size_t>(basis->dim()); ++i)
        cls.projectors.push_back(outer_projector(basis->vector(i)));
      for (const json& file : cj.at("operators"))
        cls.operators.push_back(read_matrix(dir / file.get<std::string>()));
      s.classes.push_back(std::move(cls));
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string(kOperatorManifest) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// tensors

inline std::vector<fs::path> write_tensors(const fs::path& dir,
                                           const std::vector<SphericalTensor>& ts) {
  if (ts.empty()) throw std::invalid_argument("write_tensors: nothing to write");
  fs::create_directories(dir);
  std::vector<fs::path> written;
  json entries = json::array();
  for (const auto& t : ts) {
    const std::string name = "tau_j" + std::to_string(t.spin.two_j()) + "_k" +
                             std::to_string(t.k) + "_q" + std::to_string(t.q) +
                             ".json";
    write_text(dir / name, dump_matrix(t.matrix));
    written.push_back(dir / name);
    entries.push_back(
        {{"two_j", t.spin.two_j()}, {"k", t.k}, {"q", t.q}, {"file", name}});
  }
  const json manifest = {{"two_j", ts.front().spin.two_j()}, {"tensors", entries}};
  write_text(dir / kTensorManifest, manifest.dump(2) + "\n");
  written.push_back(dir / kTensorManifest);
  return written;
}

// ---------------------------------------------------------------------------
// measurement records and reconstruction reports

inline json to_json(const MeasurementRecord& m) {
  json bases = json::array();
  for (std::size_t b = 0; b < m.probabilities.size(); ++b) {
    bases.push_back({{"label", b < m.labels.size() ? m.labels[b] : std::string{}},
                     {"p", m.probabilities[b]}});
  }
  return {{"dim", m.dim},
          {"shots", m.shots ? json(*m.shots) : json(nullptr)},
          {"bases", bases}};
}

inline MeasurementRecord record_from_json(const json& j) {
  try {
    MeasurementRecord m;
    m.dim = j.at("dim").get<int>();
    if (!j.at("shots").is_null()) m.shots = j.at("shots").get<std::uint64_t>();
    for (const json& b : j.at("bases")) {
      m.labels.push_back(b.at("label").get<std::string>());
      auto p = b.at("p").get<std::vector<double>>();
      if (p.size() != static_cast<std::size_t>(m.dim)) {
        throw ParseError("probability vector length " + std::to_string(p.size()) +
                         " != dim " + std::to_string(m.dim));
      }
      m.probabilities.push_back(std::move(p));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed measurement record: ") + e.what());
  }
}

inline json to_json(const ReconstructionReport& r) {
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  return {{"trace_distance", opt(r.trace_distance)},
          {"fidelity", opt(r.fidelity)},
          {"shots", opt(r.shots)},
          {"projected", r.projected},
          {"raw_min_eigenvalue", r.raw_min_eigenvalue},
          {"estimate", json::parse(dump_matrix(r.estimate.matrix()))}};
}

}  // namespace mubkit::io

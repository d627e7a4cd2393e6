#pragma once

// mubkit command-line driver.
//
// Exit codes: 0 pass, 1 verification failure, 2 unsupported input (including
// bad flags), 3 I/O or parse error. Machine output is JSON on stdout; only
// `tables` prints human-oriented text.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mubkit/classes.hpp"
#include "mubkit/cli/tables.hpp"
#include "mubkit/errors.hpp"
#include "mubkit/io.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/report.hpp"
#include "mubkit/tensors.hpp"
#include "mubkit/tomography.hpp"

namespace mubkit::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailure = 1,
  kUnsupportedInput = 2,
  kIoError = 3,
};

using nlohmann::json;
namespace fs = std::filesystem;

/// --tol beats MUBKIT_TOL beats the 1e-10 default.
inline Tolerance resolve_tolerance(std::optional<double> flag) {
  if (flag) return Tolerance(*flag);
  if (const char* env = std::getenv("MUBKIT_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw std::invalid_argument(std::string("MUBKIT_TOL is not a number: ") + env);
    }
    return Tolerance(v);
  }
  return Tolerance{};
}

inline FamilySource parse_source(const std::string& s) {
  if (s == "paper") return FamilySource::paper;
  if (s == "generated") return FamilySource::generated;
  return FamilySource::automatic;
}

namespace detail {

inline json family_json(const MubFamily& f) {
  json labels = json::array();
  for (const Basis& b : f.bases) labels.push_back(b.label);
  return labels;
}

inline json paths_json(const std::vector<fs::path>& paths) {
  json out = json::array();
  for (const auto& p : paths) out.push_back(p.string());
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// subcommands

struct MubOptions {
  int dim = 0;
  std::string source = "auto";
  std::string out_dir;
  std::optional<double> tol;
};

inline int cmd_mub(const MubOptions& o, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(o.tol);
  const MubFamily f = make_family(o.dim, parse_source(o.source));
  const Report r = check_family(f, tol);
  json doc = {{"command", "mub"},
              {"dim", f.dim},
              {"source", f.source},
              {"bases", detail::family_json(f)},
              {"checks", to_json(r)},
              {"pass", r.passed()}};
  if (!o.out_dir.empty()) doc["files"] = detail::paths_json(io::write_family(o.out_dir, f));
  out << doc.dump(2) << "\n";
  return r.passed() ? kPass : kVerificationFailure;
}

struct OperatorOptions {
  int dim = 0;
  std::string source = "auto";
  std::string out_dir;
  std::optional<double> tol;
};

inline int cmd_operators(const OperatorOptions& o, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(o.tol);
  const OperatorSet s = build_set(make_family(o.dim, parse_source(o.source)), tol);
  const Report r = verify_set(s, tol);
  json classes = json::array();
  for (const auto& cls : s.classes)
    classes.push_back({{"basis_label", cls.basis_label()},
                       {"operators", cls.operators.size()}});
  json doc = {{"command", "operators"},
              {"dim", s.dim},
              {"operator_count", s.size()},
              {"classes", classes},
              {"checks", to_json(r)},
              {"pass", r.passed()}};
  if (!o.out_dir.empty())
    doc["files"] = detail::paths_json(io::write_operator_set(o.out_dir, s));
  out << doc.dump(2) << "\n";
  return r.passed() ? kPass : kVerificationFailure;
}

struct VerifyOptions {
  std::string in_dir;
  std::optional<double> tol;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(o.tol);
  const fs::path dir(o.in_dir);
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + o.in_dir);
  const bool has_family = fs::exists(dir / io::kFamilyManifest);
  const bool has_ops = fs::exists(dir / io::kOperatorManifest);
  if (!has_family && !has_ops) {
    throw ParseError("no family.json or operators.json in " + o.in_dir);
  }
  if (has_ops && !has_family) {
    throw ParseError("operators.json present without family.json in " + o.in_dir);
  }
  json doc = {{"command", "verify"}, {"in", o.in_dir}};
  bool pass = true;
  const MubFamily f = io::read_family(dir);
  const Report fr = check_family(f, tol);
  doc["family"] = {{"dim", f.dim}, {"checks", to_json(fr)}, {"pass", fr.passed()}};
  pass = pass && fr.passed();
  if (has_ops) {
    const OperatorSet s = io::read_operator_set(dir, f);
    const Report sr = verify_set(s, tol);
    doc["operators"] = {{"dim", s.dim},
                        {"operator_count", s.size()},
                        {"checks", to_json(sr)},
                        {"pass", sr.passed()}};
    pass = pass && sr.passed();
  }
  doc["pass"] = pass;
  out << doc.dump(2) << "\n";
  return pass ? kPass : kVerificationFailure;
}

struct TensorOptions {
  int two_j = 0;
  std::optional<int> k;
  std::optional<int> q;
  std::string out_dir;
  std::optional<double> tol;
};

inline int cmd_tensors(const TensorOptions& o, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(o.tol);
  const SpinLabel spin(o.two_j);
  std::vector<SphericalTensor> ts;
  for (int k = 0; k <= spin.two_j(); ++k) {
    if (o.k && *o.k != k) continue;
    for (int q = -k; q <= k; ++q) {
      if (o.q && *o.q != q) continue;
      ts.push_back(spherical_tensor(spin, k, q));
    }
  }
  if (ts.empty()) {
    throw std::invalid_argument("no tensor matches the requested k/q for 2j = " +
                                std::to_string(o.two_j));
  }
  // orthogonality Tr(t^dag t') = (2j+1) delta and t^dag = (-1)^q t_{-q}
  const double d = spin.dim();
  double orth = 0.0, sym = 0.0;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = a; b < ts.size(); ++b) {
      const double target = a == b ? d : 0.0;
      orth = std::max(orth, std::abs(hs_inner(ts[a].matrix, ts[b].matrix) - target));
    }
    const SphericalTensor partner = spherical_tensor(spin, ts[a].k, -ts[a].q);
    const double sign = ts[a].q % 2 == 0 ? 1.0 : -1.0;
    sym = std::max(sym, max_abs_diff(adjoint(ts[a].matrix), sign * partner.matrix));
  }
  Report r;
  r.add("orthogonality", orth, orth <= tol.eps());
  r.add("conjugation_symmetry", sym, sym <= tol.eps());
  json entries = json::array();
  for (const auto& t : ts) {
    json e = {{"two_j", t.spin.two_j()}, {"k", t.k}, {"q", t.q}};
    if (o.out_dir.empty()) e["matrix"] = json::parse(io::dump_matrix(t.matrix));
    entries.push_back(std::move(e));
  }
  json doc = {{"command", "tensors"},
              {"two_j", spin.two_j()},
              {"tensors", entries},
              {"checks", to_json(r)},
              {"pass", r.passed()}};
  if (!o.out_dir.empty()) doc["files"] = detail::paths_json(io::write_tensors(o.out_dir, ts));
  out << doc.dump(2) << "\n";
  return r.passed() ? kPass : kVerificationFailure;
}

struct TomoOptions {
  int dim = 0;
  std::uint64_t seed = 1;
  std::string shots = "exact";
  int trials = 1;
  bool project = false;
  bool pure = false;
  std::string source = "auto";
};

inline std::optional<std::uint64_t> parse_shots(const std::string& s) {
  if (s == "exact") return std::nullopt;
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || n == 0 || s.front() == '-') {
    throw std::invalid_argument("--shots must be 'exact' or a positive integer, got '" +
                                s + "'");
  }
  return n;
}

inline int cmd_tomo(const TomoOptions& o, std::ostream& out) {
  if (o.trials < 0) throw std::invalid_argument("--trials must be >= 0");
  const std::optional<std::uint64_t> shots = parse_shots(o.shots);
  const MubFamily f = make_family(o.dim, parse_source(o.source));
  const OperatorSet s = build_set(f);
  json results = json::array();
  std::vector<double> distances;
  std::vector<double> fidelities;
  for (int t = 0; t < o.trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const std::uint64_t state_seed = derive_stream_seed(o.seed, 2 * trial);
    const DensityMatrix rho = o.pure ? random_pure_state(o.dim, state_seed)
                                     : random_density(o.dim, state_seed);
    MeasurementRecord rec = probabilities(rho, f);
    if (shots) rec = sample_shots(rec, *shots, derive_stream_seed(o.seed, 2 * trial + 1));
    const ReconstructionReport rep = reconstruct_from_record(rec, s, o.project, rho);
    distances.push_back(*rep.trace_distance);
    if (rep.fidelity) fidelities.push_back(*rep.fidelity);
    results.push_back({{"trial", t},
                       {"trace_distance", *rep.trace_distance},
                       {"fidelity", rep.fidelity ? json(*rep.fidelity) : json(nullptr)},
                       {"projected", rep.projected},
                       {"raw_min_eigenvalue", rep.raw_min_eigenvalue}});
  }
  json aggregate = {{"trials", o.trials}};
  if (distances.empty()) {
    aggregate["max_trace_distance"] = nullptr;
    aggregate["median_trace_distance"] = nullptr;
    aggregate["mean_trace_distance"] = nullptr;
  } else {
    aggregate["max_trace_distance"] = *std::max_element(distances.begin(), distances.end());
    aggregate["median_trace_distance"] = detail::median(distances);
    aggregate["mean_trace_distance"] =
        std::accumulate(distances.begin(), distances.end(), 0.0) /
        static_cast<double>(distances.size());
  }
  aggregate["mean_fidelity"] =
      fidelities.empty()
          ? json(nullptr)
          : json(std::accumulate(fidelities.begin(), fidelities.end(), 0.0) /
                 static_cast<double>(fidelities.size()));
  const json doc = {{"command", "tomo"},
                    {"dim", o.dim},
                    {"seed", o.seed},
                    {"shots", shots ? json(*shots) : json(nullptr)},
                    {"project", o.project},
                    {"pure", o.pure},
                    {"operator_count", s.size()},
                    {"results", results},
                    {"aggregate", aggregate}};
  out << doc.dump(2) << "\n";
  return kPass;
}

// ---------------------------------------------------------------------------
// entry point

inline void print_error(std::ostream& out, std::ostream& err, const std::string& kind,
                        const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  out << extra.dump(2) << "\n";
  err << "mubkit: " << message << "\n";
}

/// Runs the CLI on args (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Mutually unbiased bases, commuting operator classes and tomography"};
  app.name("mubkit");
  app.require_subcommand(1);

  MubOptions mub_opts;
  auto* mub = app.add_subcommand("mub", "Build and certify a complete MUB family");
  mub->add_option("--dim", mub_opts.dim, "Hilbert-space dimension")->required();
  mub->add_option("--source", mub_opts.source, "paper | generated | auto")
      ->check(CLI::IsMember({"auto", "paper", "generated"}));
  mub->add_option("--out", mub_opts.out_dir, "Directory for basis files + manifest");
  mub->add_option("--tol", mub_opts.tol, "Tolerance (default 1e-10 or MUBKIT_TOL)");

  OperatorOptions op_opts;
  auto* ops = app.add_subcommand("operators", "Build and verify the commuting classes");
  ops->add_option("--dim", op_opts.dim, "Hilbert-space dimension")->required();
  ops->add_option("--source", op_opts.source, "paper | generated | auto")
      ->check(CLI::IsMember({"auto", "paper", "generated"}));
  ops->add_option("--out", op_opts.out_dir, "Directory for operator files + manifests");
  ops->add_option("--tol", op_opts.tol, "Tolerance (default 1e-10 or MUBKIT_TOL)");

  VerifyOptions ver_opts;
  auto* ver = app.add_subcommand("verify", "Re-verify exported families / operator sets");
  ver->add_option("--in", ver_opts.in_dir, "Directory written by mub/operators")->required();
  ver->add_option("--tol", ver_opts.tol, "Tolerance (default 1e-10 or MUBKIT_TOL)");

  TensorOptions ten_opts;
  auto* ten = app.add_subcommand("tensors", "Export spherical tensor operators tau^k_q");
  ten->add_option("--two-j", ten_opts.two_j, "Twice the spin j")->required();
  ten->add_option("--k", ten_opts.k, "Only this rank");
  ten->add_option("--q", ten_opts.q, "Only this projection");
  ten->add_option("--out", ten_opts.out_dir, "Directory for tensor files + manifest");
  ten->add_option("--tol", ten_opts.tol, "Tolerance (default 1e-10 or MUBKIT_TOL)");

  TomoOptions tomo_opts;
  auto* tomo = app.add_subcommand("tomo", "Simulate state tomography with the MUB operators");
  tomo->add_option("--dim", tomo_opts.dim, "Hilbert-space dimension")->required();
  tomo->add_option("--seed", tomo_opts.seed, "Random seed");
  tomo->add_option("--shots", tomo_opts.shots, "'exact' or shots per basis");
  tomo->add_option("--trials", tomo_opts.trials, "Number of random states");
  tomo->add_flag("--project", tomo_opts.project, "Project estimates onto physical states");
  tomo->add_flag("--pure", tomo_opts.pure, "Draw pure states (enables fidelity)");
  tomo->add_option("--source", tomo_opts.source, "paper | generated | auto")
      ->check(CLI::IsMember({"auto", "paper", "generated"}));

  auto* tables = app.add_subcommand("tables", "Print the built-in matrices");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    print_error(out, err, "usage", e.what());
    return kUnsupportedInput;
  }

  try {
    if (mub->parsed()) return cmd_mub(mub_opts, out);
    if (ops->parsed()) return cmd_operators(op_opts, out);
    if (ver->parsed()) return cmd_verify(ver_opts, out);
    if (ten->parsed()) return cmd_tensors(ten_opts, out);
    if (tomo->parsed()) return cmd_tomo(tomo_opts, out);
    if (tables->parsed()) {
      print_tables(out);
      return kPass;
    }
  } catch (const UnsupportedDimension& e) {
    print_error(out, err, "unsupported_dimension", e.what(),
                {{"dim", e.dim()}, {"issue", to_string(e.issue())}});
    return kUnsupportedInput;
  } catch (const InvalidFamily& e) {
    print_error(out, err, "invalid_family", e.what(), {{"checks", to_json(e.report())}});
    return kVerificationFailure;
  } catch (const ParseError& e) {
    print_error(out, err, "parse", e.what());
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    print_error(out, err, "io", e.what());
    return kIoError;
  } catch (const DimensionMismatch& e) {
    print_error(out, err, "parse", e.what());
    return kIoError;
  } catch (const std::invalid_argument& e) {
    print_error(out, err, "invalid_argument", e.what());
    return kUnsupportedInput;
  }
  return kUnsupportedInput;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mubkit::cli

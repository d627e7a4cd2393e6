#pragma once

#include <stdexcept>
#include <string>

namespace mubkit {

/// Two operands whose shapes do not fit the requested operation.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument("dimension mismatch: " + what) {}
};

enum class DimensionIssue {
  too_small,           // d < 2
  no_complete_family,  // not a prime power: no complete MUB family is known
  no_construction,     // family exists but this constructor does not build it
  out_of_range,        // outside a fixed support window (e.g. tensor tables)
};

inline const char* to_string(DimensionIssue issue) {
  switch (issue) {
    case DimensionIssue::too_small:
      return "too_small";
    case DimensionIssue::no_complete_family:
      return "no_complete_family";
    case DimensionIssue::no_construction:
      return "no_construction";
    case DimensionIssue::out_of_range:
      return "out_of_range";
  }
  return "unknown";
}

/// Structured refusal for a dimension the library cannot serve.
class UnsupportedDimension : public std::invalid_argument {
 public:
  UnsupportedDimension(int dim, DimensionIssue issue, const std::string& detail)
      : std::invalid_argument("unsupported dimension " + std::to_string(dim) +
                              ": " + detail),
        dim_(dim),
        issue_(issue) {}

  int dim() const noexcept { return dim_; }
  DimensionIssue issue() const noexcept { return issue_; }

 private:
  int dim_;
  DimensionIssue issue_;
};

/// Malformed on-disk data (JSON files, manifests).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mubkit

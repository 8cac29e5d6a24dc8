#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dechist {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix fails a structural requirement (hermiticity, idempotence,
/// unit trace, positivity, completeness, unitarity). The message carries
/// the offending residual.
class structural_error : public error {
 public:
  using error::error;
};

/// Operands have incompatible shapes.
class dimension_error : public error {
 public:
  using error::error;
};

/// A history or path index is out of range for its grid or model.
class index_error : public error {
 public:
  using error::error;
};

/// An enumeration would exceed the hard cardinality cap.
class enumeration_overflow : public error {
 public:
  using error::error;
};

/// A coarse-graining map does not cover its domain.
class coverage_error : public error {
 public:
  using error::error;
};

/// Region sets overlap or fail to cover the site set.
class partition_error : public error {
 public:
  using error::error;
};

/// An operation restricted to pure states was handed a mixed state.
class unsupported_state_error : public error {
 public:
  using error::error;
};

/// An unknown criterion or malformed CLI request.
class usage_error : public error {
 public:
  using error::error;
};

/// A config document fails schema validation. Carries every violation,
/// each prefixed with the JSON path of the offending field.
class config_error : public error {
 public:
  config_error(const std::string& summary, std::vector<std::string> violations)
      : error(summary), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// File read/write failure; message names the path.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace dechist

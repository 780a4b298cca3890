#pragma once

#include <stdexcept>
#include <string>

namespace rentt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension or layout mismatch between matrices, layers or inputs.
struct ShapeError : Error {
  using Error::Error;
};

/// Malformed model/tree/dataset file. Message carries the offending path.
struct SchemaError : Error {
  using Error::Error;
};

/// NaN/Inf or otherwise unusable numeric input.
struct ValueError : Error {
  using Error::Error;
};

/// A caller violated an API precondition (e.g. pattern prefix too short).
struct ContractError : Error {
  using Error::Error;
};

/// Strict-mode tree query hit an activation pattern with no materialized path.
struct RoutingError : Error {
  using Error::Error;
};

struct EmptyDatasetError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

/// Numeric-domain violation (e.g. nonpositive data in a log-log fit).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace rentt

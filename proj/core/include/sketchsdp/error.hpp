#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchsdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tabular or key=value input. Row and column are 1-based; 0 means
/// "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what + " (row " + std::to_string(row) + ", column " +
              std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Non-finite iterates in the SDP solver.
class SolverDiverged : public Error {
 public:
  SolverDiverged()
      : Error("solver diverged (non-finite iterate); consider enabling the "
              "distance cap") {}
};

}  // namespace sketchsdp

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rme/curve_model.hpp"
#include "rme/geodesic_graph.hpp"

namespace rme {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed curve file. `line` and `column` are 1-based; column 0 means
/// the whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The t column is not strictly increasing at `line`.
class NonmonotoneGrid : public ParseError {
 public:
  using ParseError::ParseError;
};

// Curve file layout: header `t,<name1>,...,<namen>`, then one row per grid
// point. Values are written with round-trip decimal formatting.
CurveSet read_curve_csv(std::istream& in);
CurveSet ingest_csv(const std::filesystem::path& path);

void write_curve_csv(std::ostream& out, const CurveSet& curves);

/// Rows of the matrix, comma separated, no header.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix);

}  // namespace rme

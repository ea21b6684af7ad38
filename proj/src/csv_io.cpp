#include "rme/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "rme/format.hpp"

namespace rme {

ParseError::ParseError(const std::string& what, std::size_t line,
                       std::size_t column)
    : std::runtime_error("line " + std::to_string(line) +
                         (column > 0 ? ", column " + std::to_string(column)
                                     : std::string()) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

CurveSet read_curve_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError("empty file", 1, 0);
  const auto header = split(line);
  if (header.front() != "t") {
    throw ParseError("first header field must be 't'", line_no, 1);
  }
  if (header.size() < 2) throw ParseError("no curve columns", line_no, 0);
  std::vector<std::string> names(header.begin() + 1, header.end());
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c].empty()) throw ParseError("empty column name", line_no, c + 2);
  }

  std::vector<double> grid;
  std::vector<std::vector<double>> curves(names.size());
  while (next_line()) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no, 0);
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      try {
        row[c] = parse_double(fields[c]);
      } catch (const std::invalid_argument&) {
        throw ParseError("non-numeric cell '" + std::string(fields[c]) + "'",
                         line_no, c + 1);
      }
      if (!std::isfinite(row[c])) {
        throw ParseError("non-finite cell", line_no, c + 1);
      }
    }
    if (!grid.empty() && !(grid.back() < row[0])) {
      throw NonmonotoneGrid("t is not strictly increasing", line_no, 1);
    }
    grid.push_back(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) curves[c - 1].push_back(row[c]);
  }
  if (grid.size() < 2) {
    throw ParseError("need at least 2 grid rows", line_no, 0);
  }
  return CurveSet(Grid(std::move(grid)), std::move(curves), std::move(names));
}

CurveSet ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const CurveSet& curves) {
  out << 't';
  for (const auto& name : curves.names()) out << ',' << name;
  out << '\n';
  for (std::size_t j = 0; j < curves.grid_size(); ++j) {
    out << format_double(curves.grid()[j]);
    for (std::size_t i = 0; i < curves.count(); ++i) {
      out << ',' << format_double(curves.values(i)[j]);
    }
    out << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix) {
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
}

}  // namespace rme

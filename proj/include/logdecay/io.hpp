#pragma once

#include "logdecay/core.hpp"
#include "logdecay/semigroup.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace logdecay::io {

using Json = nlohmann::ordered_json;

/// Malformed file content or schema.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// { "n": int, "entries": [[ [re, im], ... ], ...] }, row major.
Json matrix_to_json(const ComplexMatrix &a);
ComplexMatrix matrix_from_json(const Json &j);

/// { "n": int, "entries": [ [re, im], ... ] }.
Json vector_to_json(const ComplexVector &v);
ComplexVector vector_from_json(const Json &j);

/// Canonical text: compact dump, shortest round-trip doubles.
std::string dump_matrix(const ComplexMatrix &a);
ComplexMatrix parse_matrix(const std::string &text);

ComplexMatrix read_matrix_file(const std::string &path);
ComplexVector read_vector_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

/// FNV-1a 64 over the canonical matrix text, as 16 hex digits.
std::string matrix_hash(const ComplexMatrix &a);

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// CSV with header row, LF endings.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string> &cells);
  void row(const std::vector<double> &cells);
  const std::string &str() const { return text_; }

private:
  std::size_t width_;
  std::string text_;
};

std::string height_series_csv(const HeightSeries<double> &s);

} // namespace logdecay::io

#include "logdecay/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace logdecay::io {

namespace {

Json complex_to_json(const Complex<double> &z) { return Json::array({z.real(), z.imag()}); }

Complex<double> complex_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entry must be a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t read_dimension(const Json &j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw ParseError("expected an object with \"n\" and \"entries\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ParseError("\"n\" must be a positive integer");
  if (!j["entries"].is_array())
    throw ParseError("\"entries\" must be an array");
  return j["n"].get<std::size_t>();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

} // namespace

Json matrix_to_json(const ComplexMatrix &a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["n"] = a.rows();
  out["entries"] = std::move(rows);
  return out;
}

ComplexMatrix matrix_from_json(const Json &j) {
  const std::size_t n = read_dimension(j);
  const Json &rows = j["entries"];
  if (rows.size() != n)
    throw ParseError("\"entries\" must have n rows");
  ComplexMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("row " + std::to_string(i) + " must have n entries");
    for (std::size_t k = 0; k < n; ++k)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(rows[i][k]);
  }
  if (!all_finite(a))
    throw ParseError("matrix has non-finite entries");
  return a;
}

Json vector_to_json(const ComplexVector &v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    entries.push_back(complex_to_json(v(i)));
  Json out;
  out["n"] = v.size();
  out["entries"] = std::move(entries);
  return out;
}

ComplexVector vector_from_json(const Json &j) {
  const std::size_t n = read_dimension(j);
  const Json &entries = j["entries"];
  if (entries.size() != n)
    throw ParseError("\"entries\" must have n elements");
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(entries[i]);
  if (!all_finite(v))
    throw ParseError("vector has non-finite entries");
  return v;
}

std::string dump_matrix(const ComplexMatrix &a) { return matrix_to_json(a).dump(); }

ComplexMatrix parse_matrix(const std::string &text) { return matrix_from_json(parse_json(text)); }

ComplexMatrix read_matrix_file(const std::string &path) { return parse_matrix(read_file(path)); }

ComplexVector read_vector_file(const std::string &path) {
  return vector_from_json(parse_json(read_file(path)));
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string matrix_hash(const ComplexMatrix &a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_matrix(a)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string format_double(double v) {
  if (!std::isfinite(v))
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  return Json(v).dump();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

void CsvWriter::row(const std::vector<std::string> &cells) {
  if (cells.size() != width_)
    throw std::logic_error("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i)
      text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<double> &cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells)
    text.push_back(format_double(v));
  row(text);
}

std::string height_series_csv(const HeightSeries<double> &s) {
  CsvWriter csv({"t", "h", "hprime", "hsecond", "logh"});
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    csv.row(std::vector<double>{s.grid[k], s.h[k], s.h_prime[k], s.h_second[k], std::log(s.h[k])});
  return csv.str();
}

} // namespace logdecay::io

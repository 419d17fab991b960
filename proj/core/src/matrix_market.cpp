#include "stabsel/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace stabsel {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SparseMatrixCSR read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input", 1);
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", line_no);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("unsupported object '" + object + "'", line_no);
  if (format != "coordinate") throw ParseError("unsupported format '" + format + "' (need coordinate)", line_no);
  if (field == "pattern" || field == "complex") {
    throw ParseError("unsupported field '" + field + "' (need real)", line_no);
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw ParseError("unknown field '" + field + "'", line_no);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
  }
  const bool symmetric = symmetry == "symmetric";

  long long rows = 0, cols = 0, entries = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream size(line);
    if (!(size >> rows >> cols >> entries)) throw ParseError("malformed size line", line_no);
    have_size = true;
    break;
  }
  if (!have_size) throw ParseError("missing size line", line_no);
  if (rows < 1 || cols < 1 || entries < 0) throw ParseError("invalid matrix size", line_no);
  if (rows != cols) {
    throw ParseError("non-square matrix (" + std::to_string(rows) + " x " + std::to_string(cols) + ")",
                     line_no);
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * entries : entries));
  long long seen = 0;
  while (seen < entries && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v)) throw ParseError("malformed entry", line_no);
    if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError("entry index out of range", line_no);
    if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
    triplets.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    if (symmetric && i != j) triplets.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), v});
    ++seen;
  }
  if (seen < entries) {
    throw ParseError("expected " + std::to_string(entries) + " entries, found " + std::to_string(seen),
                     line_no);
  }
  return SparseMatrixCSR::from_triplets(static_cast<Index>(rows), triplets);
}

SparseMatrixCSR read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrixCSR& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.dim() << ' ' << a.dim() << ' ' << a.nnz() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto v = a.values();
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index p = rp[i]; p < rp[i + 1]; ++p) out << i + 1 << ' ' << ci[p] + 1 << ' ' << v[p] << '\n';
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrixCSR& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_matrix_market(out, a);
}

}  // namespace stabsel

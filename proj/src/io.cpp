#include "giep/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "giep/error.hpp"

namespace giep::io {

using nlohmann::json;

namespace {

double number_at(const json& j, const char* where) {
  if (!j.is_number()) throw Error(ErrorKind::BadFormat, std::string(where) + " must be a number");
  return j.get<double>();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Spectrum parse_spectrum(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::BadFormat, std::string("spectrum file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::BadFormat, "spectrum file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "pairs" && key != "reals")
      throw Error(ErrorKind::BadFormat, "unexpected key '" + key + "' in spectrum file");
  }
  std::vector<ConjugatePair> pairs;
  std::vector<double> reals;
  if (doc.contains("pairs")) {
    if (!doc["pairs"].is_array()) throw Error(ErrorKind::BadFormat, "'pairs' must be an array");
    for (const auto& p : doc["pairs"]) {
      if (!p.is_array() || p.size() != 2)
        throw Error(ErrorKind::BadFormat, "each pair must be [re, im]");
      pairs.push_back({number_at(p[0], "pair re"), number_at(p[1], "pair im")});
    }
  }
  if (doc.contains("reals")) {
    if (!doc["reals"].is_array()) throw Error(ErrorKind::BadFormat, "'reals' must be an array");
    for (const auto& g : doc["reals"]) reals.push_back(number_at(g, "real eigenvalue"));
  }
  return Spectrum(std::move(pairs), std::move(reals));
}

std::string format_spectrum(const Spectrum& s) {
  // Written by hand so every value keeps 17 significant digits.
  std::ostringstream os;
  os << "{\n  \"pairs\": [";
  for (std::size_t i = 0; i < s.k(); ++i) {
    os << (i ? ", " : "") << '[' << fmt17(s.pairs()[i].re) << ", " << fmt17(s.pairs()[i].im)
       << ']';
  }
  os << "],\n  \"reals\": [";
  for (std::size_t i = 0; i < s.l(); ++i) os << (i ? ", " : "") << fmt17(s.reals()[i]);
  os << "]\n}\n";
  return os.str();
}

std::string format_matrix_csv(const DenseMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt17(m(i, j));
    }
    out += '\n';
  }
  return out;
}

DenseMatrix parse_matrix_csv(std::string_view text) {
  std::vector<double> entries;
  std::size_t rows = 0, cols = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto pos = text.find('\n');
    const std::string_view line = trim(text.substr(0, pos));
    text = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
    ++line_no;
    if (line.empty()) continue;

    std::size_t count = 0;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      const std::string cell(trim(rest.substr(0, comma)));
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw Error(ErrorKind::BadFormat, "line " + std::to_string(line_no) +
                                              ": cannot parse '" + cell + "' as a number");
      if (!std::isfinite(v))
        throw Error(ErrorKind::BadFormat, "line " + std::to_string(line_no) + ": non-finite entry");
      entries.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (rows == 0) cols = count;
    if (count != cols)
      throw Error(ErrorKind::BadFormat, "line " + std::to_string(line_no) + " has " +
                                            std::to_string(count) + " entries, expected " +
                                            std::to_string(cols));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::BadFormat, "matrix file is empty");
  return DenseMatrix(rows, cols, std::move(entries));
}

std::string format_matrix_market(const DenseMatrix& m) {
  std::size_t nnz = 0;
  for (double v : m.entries()) nnz += v != 0.0;
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) os << i + 1 << ' ' << j + 1 << ' ' << fmt17(m(i, j)) << '\n';
  return os.str();
}

json to_json(const SolveReport& r) {
  json history = json::array();
  for (const StepRecord& s : r.history)
    history.push_back({{"t", s.t}, {"residual", s.residual}, {"newton_iterations", s.newton_iterations}});
  return {
      {"status", "ok"},
      {"mode", std::string(to_string(r.mode))},
      {"n", r.matrix.rows()},
      {"spectrum_error", r.residual},
      {"steps", r.steps},
      {"rejected_steps", r.rejected_steps},
      {"newton_iterations_total", r.newton_iterations_total},
      {"disc_radius", r.radius},
      {"history", history},
  };
}

json to_json(const VerificationReport& r) {
  json issues = json::array();
  for (const PatternIssue& p : r.issues) {
    issues.push_back({{"row", p.row + 1},
                      {"col", p.col + 1},
                      {"value", p.value},
                      {"expected", p.expected_nonzero ? "nonzero" : "zero"}});
  }
  json out = {
      {"passed", r.passed()},
      {"pattern", {{"passed", r.pattern_ok}, {"offending_positions", issues}}},
      {"spectrum",
       {{"passed", r.spectrum_ok},
        {"max_distance", std::isfinite(r.spectrum_error) ? json(r.spectrum_error) : json(nullptr)},
        {"tolerance", r.spectrum_tolerance}}},
  };
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadFormat, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadFormat, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::BadFormat, "failed writing " + path.string());
}

}  // namespace giep::io

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "giep/apps.hpp"
#include "giep/linalg.hpp"
#include "giep/model.hpp"
#include "giep/solver.hpp"
#include "json.hpp"

namespace giep::io {

/// {"pairs": [[re, im], ...], "reals": [g, ...]}. Either key may be
/// omitted when empty. Throws BadFormat on malformed documents; spectrum
/// invariant violations surface as InvalidArgument / DegenerateSpectrum.
Spectrum parse_spectrum(std::string_view text);
std::string format_spectrum(const Spectrum& s);

/// One row per line, comma-separated, 17 significant digits.
std::string format_matrix_csv(const DenseMatrix& m);
/// Throws BadFormat on empty input, ragged rows or unparsable numbers.
DenseMatrix parse_matrix_csv(std::string_view text);

/// Coordinate-format Matrix Market ("matrix coordinate real general"),
/// listing every nonzero entry with 1-based indices.
std::string format_matrix_market(const DenseMatrix& m);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const VerificationReport& r);

/// Whole-file helpers; throw BadFormat if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace giep::io

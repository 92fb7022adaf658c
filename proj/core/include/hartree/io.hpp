#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hartree/cartesian3d.hpp"
#include "hartree/functionals.hpp"
#include "hartree/radial_field.hpp"
#include "hartree/spectral.hpp"
#include "hartree/verify.hpp"

namespace hartree::io {

/// RFC 4180 quoting: fields containing a comma, quote or newline are quoted.
std::string csv_field(std::string_view s);
/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Header row plus numeric rows. Throws std::runtime_error if the file cannot be written.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Writes <stem>.csv with columns (r, name) and <stem>.json describing the grid.
void write_radial(const std::filesystem::path& stem, const RadialField& f,
                  std::string_view name = "chi");
/// Reads a (r, value) CSV written by write_radial back onto `grid`; the radii must match.
RadialField read_radial_csv(const std::filesystem::path& path, const RadialGrid& grid);

/// JSON texts with a stable key order.
std::string to_json(const FunctionalReport& r);
std::string to_json(const IdentityReport& r);
std::string to_json(const std::vector<IdentityReport>& reports);
std::string to_json(const BatchSummary& s);
std::string grid_json(const RadialGrid& g);

void write_report_csv(const std::filesystem::path& path, const FunctionalReport& r);

/// <stem>.csv with columns r, e0, e1, ... and <stem>.json with the eigenvalues and errors.
void write_eigenpairs(const std::filesystem::path& stem, const std::vector<EigenPair>& pairs);

/// Flat CSV with columns x, y, z, value, x fastest.
void write_cartesian_csv(const std::filesystem::path& path, const CartesianField& f);
/// <stem>.bin (row-major doubles, x fastest, native little-endian) and <stem>.json header.
void write_cartesian_binary(const std::filesystem::path& stem, const CartesianField& f);
CartesianField read_cartesian_binary(const std::filesystem::path& stem);

}  // namespace hartree::io

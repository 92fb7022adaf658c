#include "hartree/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hartree/errors.hpp"
#include "json.hpp"

namespace hartree::io {

namespace {

using nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::filesystem::path with_ext(std::filesystem::path stem, std::string_view ext) {
  stem += ext;
  return stem;
}

// JSON has no inf/nan; those become null.
ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json report_object(const FunctionalReport& r) {
  ordered_json j;
  j["omega"] = number(r.omega);
  j["l2_sq"] = number(r.l2_sq);
  j["h1dot_sq"] = number(r.h1dot_sq);
  j["coulomb_attraction"] = number(r.coulomb_attraction);
  j["a_quad"] = number(r.a_quad);
  j["l_omega"] = number(r.l_omega);
  j["energy"] = number(r.energy);
  j["action"] = number(r.action);
  return j;
}

ordered_json identity_object(const IdentityReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["kind"] = r.kind == RelationKind::identity ? "identity" : "inequality";
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["abs_residual"] = number(r.abs_residual);
  j["rel_residual"] = number(r.rel_residual);
  j["tolerance"] = number(r.tolerance);
  j["holds"] = r.holds;
  return j;
}

ordered_json grid_object(const RadialGrid& g) {
  ordered_json j;
  j["n"] = g.size();
  j["r_max"] = g.r_max();
  j["spacing"] = std::string(to_string(g.kind()));
  return j;
}

ordered_json lattice_object(const CartesianGrid& g) {
  ordered_json j;
  j["n"] = g.n;
  j["half_width"] = g.half_width;
  j["spacing"] = g.spacing();
  j["first_coordinate"] = g.coordinate(0);
  j["ordering"] = "x fastest, then y, then z";
  return j;
}

}  // namespace

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_radial(const std::filesystem::path& stem, const RadialField& f, std::string_view name) {
  const auto r = f.grid().nodes();
  std::vector<std::vector<double>> rows(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rows[i] = {r[i], f[i]};
  const auto csv = with_ext(stem, ".csv");
  write_csv(csv, {"r", std::string(name)}, rows);
  ordered_json j;
  j["kind"] = "radial_profile";
  j["data"] = csv.filename().string();
  j["columns"] = {"r", std::string(name)};
  j["grid"] = grid_object(f.grid());
  j["origin_value"] = number(f.origin_value());
  write_text(with_ext(stem, ".json"), j.dump(2) + "\n");
}

RadialField read_radial_csv(const std::filesystem::path& path, const RadialGrid& grid) {
  std::ifstream in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  const auto r = grid.nodes();
  std::vector<double> values;
  values.reserve(grid.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed row in " + path.string());
    double radius = 0.0;
    double value = 0.0;
    const char* end = line.data() + line.size();
    auto a = std::from_chars(line.data(), line.data() + comma, radius);
    auto b = std::from_chars(line.data() + comma + 1, end, value);
    if (a.ec != std::errc() || b.ec != std::errc())
      throw std::runtime_error("malformed number in " + path.string());
    const std::size_t i = values.size();
    if (i >= r.size() || std::abs(radius - r[i]) > 1e-12 * std::max(1.0, r[i]))
      detail::throw_precondition("profile radii do not match the grid");
    values.push_back(value);
  }
  if (values.size() != r.size()) detail::throw_precondition("profile length does not match the grid");
  return RadialField(grid, std::move(values));
}

std::string to_json(const FunctionalReport& r) { return report_object(r).dump(2); }
std::string to_json(const IdentityReport& r) { return identity_object(r).dump(2); }

std::string to_json(const std::vector<IdentityReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(identity_object(r));
  return arr.dump(2);
}

std::string to_json(const BatchSummary& s) {
  ordered_json j;
  j["name"] = s.name;
  j["cases"] = s.cases;
  j["failures"] = s.failures;
  j["worst"] = number(s.worst);
  j["holds"] = s.holds();
  return j.dump(2);
}

std::string grid_json(const RadialGrid& g) { return grid_object(g).dump(2); }

void write_report_csv(const std::filesystem::path& path, const FunctionalReport& r) {
  write_csv(path,
            {"omega", "l2_sq", "h1dot_sq", "coulomb_attraction", "a_quad", "l_omega", "energy", "action"},
            {{r.omega, r.l2_sq, r.h1dot_sq, r.coulomb_attraction, r.a_quad, r.l_omega, r.energy, r.action}});
}

void write_eigenpairs(const std::filesystem::path& stem, const std::vector<EigenPair>& pairs) {
  if (pairs.empty()) detail::throw_precondition("no eigenpairs to write");
  const RadialGrid& grid = pairs.front().e.grid();
  const auto r = grid.nodes();
  std::vector<std::string> header{"r"};
  for (const auto& p : pairs) header.push_back("e" + std::to_string(p.index));
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows[i].push_back(r[i]);
    for (const auto& p : pairs) rows[i].push_back(p.e[i]);
  }
  const auto csv = with_ext(stem, ".csv");
  write_csv(csv, header, rows);
  ordered_json j;
  j["kind"] = "hydrogen_eigenpairs";
  j["data"] = csv.filename().string();
  j["grid"] = grid_object(grid);
  ordered_json levels = ordered_json::array();
  for (const auto& p : pairs) {
    const double exact = hydrogen_level(p.index);
    ordered_json l;
    l["k"] = p.index;
    l["omega"] = number(p.omega);
    l["exact"] = exact;
    l["rel_error"] = number(std::abs(p.omega - exact) / exact);
    levels.push_back(l);
  }
  j["levels"] = levels;
  write_text(with_ext(stem, ".json"), j.dump(2) + "\n");
}

void write_cartesian_csv(const std::filesystem::path& path, const CartesianField& f) {
  const CartesianGrid& g = f.grid();
  std::ofstream out = open_out(path);
  out << "x,y,z,value\n";
  for (std::size_t k = 0; k < g.n; ++k)
    for (std::size_t j = 0; j < g.n; ++j)
      for (std::size_t i = 0; i < g.n; ++i)
        out << format_double(g.coordinate(i)) << ',' << format_double(g.coordinate(j)) << ','
            << format_double(g.coordinate(k)) << ',' << format_double(f[g.index(i, j, k)]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_cartesian_binary(const std::filesystem::path& stem, const CartesianField& f) {
  const auto bin = with_ext(stem, ".bin");
  std::ofstream out = open_out(bin, std::ios::out | std::ios::binary);
  const auto v = f.values();
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + bin.string());
  ordered_json j;
  j["kind"] = "lattice_field";
  j["data"] = bin.filename().string();
  j["dtype"] = "float64";
  j["endianness"] = std::endian::native == std::endian::little ? "little" : "big";
  j["dimensions"] = {f.grid().n, f.grid().n, f.grid().n};
  j["grid"] = lattice_object(f.grid());
  write_text(with_ext(stem, ".json"), j.dump(2) + "\n");
}

CartesianField read_cartesian_binary(const std::filesystem::path& stem) {
  std::ifstream hin = open_in(with_ext(stem, ".json"));
  const auto header = nlohmann::json::parse(hin);
  CartesianGrid g{header.at("grid").at("n").get<std::size_t>(),
                  header.at("grid").at("half_width").get<double>()};
  g.validate();
  std::ifstream in = open_in(with_ext(stem, ".bin"), std::ios::in | std::ios::binary);
  std::vector<double> v(g.points());
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double)))
    throw std::runtime_error("truncated lattice dump " + stem.string());
  return CartesianField(g, std::move(v));
}

}  // namespace hartree::io

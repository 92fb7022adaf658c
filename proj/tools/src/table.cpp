#include "table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hartree/io.hpp"

namespace lab {

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

Range parse_range(std::string_view text) {
  const auto a = text.find(':');
  if (a == std::string_view::npos) {
    const double v = parse_number(text);
    return {v, v, 1};
  }
  const auto b = text.find(':', a + 1);
  if (b == std::string_view::npos) throw UsageError("range must be lo:hi:count");
  Range r;
  r.lo = parse_number(text.substr(0, a));
  r.hi = parse_number(text.substr(a + 1, b - a - 1));
  const std::string_view c = text.substr(b + 1);
  std::size_t count = 0;
  const auto res = std::from_chars(c.data(), c.data() + c.size(), count);
  if (res.ec != std::errc() || res.ptr != c.data() + c.size()) throw UsageError("range count must be an integer");
  r.count = count;
  if (r.count == 0) throw UsageError("empty range: count is 0");
  if (r.hi < r.lo) throw UsageError("empty range: hi < lo");
  if (r.count == 1 && r.hi != r.lo) throw UsageError("a single-point range needs lo == hi");
  return r;
}

std::string num(double v) { return hartree::io::format_double(v); }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void Table::add(std::vector<std::string> row) {
  row.resize(header_.size());
  rows_.push_back(std::move(row));
}

void Table::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << hartree::io::csv_field(cells[i]);
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

void Table::print(std::ostream& os) const {
  std::vector<std::size_t> width(header_.size());
  for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
  for (const auto& r : rows_)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

}  // namespace lab

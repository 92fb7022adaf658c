#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lab {

/// Bad user input detected after argument parsing; exits with the usage code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// "lo:hi:count", evenly spaced and inclusive; "v" alone means a single value.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::vector<double> values() const;
};

Range parse_range(std::string_view text);

std::string num(double v);
std::string fixed(double v, int digits);

/// String table written as RFC 4180 CSV or printed with aligned columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  void write_csv(const std::filesystem::path& path) const;
  void print(std::ostream& os) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace lab

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "hartree/errors.hpp"
#include "hartree/io.hpp"
#include "json.hpp"

namespace {

using namespace hartree;
namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("hartree_io_" + std::string(info->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(io::csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min()})
    EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
  EXPECT_EQ(io::format_double(0.25), "0.25");
}

TEST_F(IoTest, RadialRoundTrip) {
  const auto g = build_grid(128, 10.0);
  const auto f = RadialField::sample(g, [](double r) { return std::exp(-r) / 3.0; });
  io::write_radial(dir_ / "chi", f, "chi");
  ASSERT_TRUE(fs::exists(dir_ / "chi.csv"));
  const auto back = io::read_radial_csv(dir_ / "chi.csv", g);
  for (std::size_t i = 0; i < g.size(); ++i) ASSERT_EQ(back[i], f[i]);
  const auto meta = nlohmann::json::parse(slurp(dir_ / "chi.json"));
  EXPECT_EQ(meta["grid"]["n"], 128);
  EXPECT_THROW(io::read_radial_csv(dir_ / "chi.csv", build_grid(128, 12.0)), PreconditionError);
  EXPECT_THROW(io::read_radial_csv(dir_ / "missing.csv", g), std::runtime_error);
}

TEST_F(IoTest, CartesianBinaryRoundTrip) {
  const CartesianGrid g{16, 10.0};
  const auto f = CartesianField::sample(g, [](double x, double y, double z) { return x - 2.0 * y + z * z; });
  io::write_cartesian_binary(dir_ / "field", f);
  EXPECT_EQ(fs::file_size(dir_ / "field.bin"), g.points() * sizeof(double));
  const auto back = io::read_cartesian_binary(dir_ / "field");
  EXPECT_EQ(back.grid(), g);
  for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(back[i], f[i]);
  const auto meta = nlohmann::json::parse(slurp(dir_ / "field.json"));
  EXPECT_EQ(meta["dtype"], "float64");
}

TEST_F(IoTest, CartesianCsvOrder) {
  const CartesianGrid g{16, 10.0};
  const auto f = CartesianField::sample(g, [](double x, double, double) { return x; });
  io::write_cartesian_csv(dir_ / "f.csv", f);
  std::ifstream in(dir_ / "f.csv");
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "x,y,z,value");
  EXPECT_EQ(first.substr(0, first.find(',')), io::format_double(g.coordinate(0)));
  EXPECT_EQ(second.substr(0, second.find(',')), io::format_double(g.coordinate(1)));
}

TEST_F(IoTest, ReportsAsJson) {
  const auto id = make_identity("probe", 1.0, 2.0, 1e-3);
  const auto j = nlohmann::json::parse(io::to_json(id));
  EXPECT_EQ(j["name"], "probe");
  EXPECT_EQ(j["holds"], false);
  EXPECT_DOUBLE_EQ(j["rel_residual"].get<double>(), 0.5);

  const auto chi = RadialField::sample(default_grid(), [](double r) { return 0.1 * std::exp(-0.5 * r); });
  const auto rep = report(chi, 0.2);
  const auto jr = nlohmann::json::parse(io::to_json(rep));
  EXPECT_EQ(jr["action"].get<double>(), rep.action);
  io::write_report_csv(dir_ / "report.csv", rep);
  EXPECT_NE(slurp(dir_ / "report.csv").find("action"), std::string::npos);
}

TEST_F(IoTest, Eigenpairs) {
  const auto pairs = compute_hydrogen_eigenpairs(build_grid(512, 40.0), 1);
  io::write_eigenpairs(dir_ / "eig", pairs);
  const auto j = nlohmann::json::parse(slurp(dir_ / "eig.json"));
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["levels"][1]["exact"].get<double>(), 1.0 / 16.0);
  EXPECT_THROW(io::write_eigenpairs(dir_ / "none", {}), PreconditionError);
}

TEST_F(IoTest, CsvWriterCreatesParents) {
  io::write_csv(dir_ / "a" / "b" / "t.csv", {"x", "y,z"}, {{1.0, 2.0}, {0.5, -1.0}});
  EXPECT_EQ(slurp(dir_ / "a" / "b" / "t.csv"), "x,\"y,z\"\n1,2\n0.5,-1\n");
}

}  // namespace

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "run_context.hpp"

namespace {

namespace fs = std::filesystem;
using lab::json;

TEST(BlobHash, MatchesGit) {
  // git hash-object on an empty file and on "hello\n".
  EXPECT_EQ(lab::git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(lab::git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

class RunContextTest : public ::testing::Test {
 protected:
  void SetUp() override {
    base_ = fs::temp_directory_path() / "hartree_run_context_test";
    fs::remove_all(base_);
  }
  void TearDown() override { fs::remove_all(base_); }
  fs::path base_;
};

TEST_F(RunContextTest, DirectoryAndManifest) {
  json config;
  config["omega"] = 0.2;
  lab::RunContext ctx("solve", config, base_, {"hartree-lab", "solve", "--omega", "0.2"});
  const std::string name = ctx.dir().filename().string();
  EXPECT_EQ(name.rfind("solve-", 0), 0u);
  json inputs;
  inputs["command"] = "solve";
  inputs["config"] = config;
  const std::string hash = lab::git_blob_hash(inputs.dump());
  EXPECT_EQ(name.substr(name.size() - 8), hash.substr(0, 8));

  std::ofstream(ctx.output("chi.csv")) << "r,chi\n";
  ctx.record_seed("init", 7);
  ctx.note("hello");
  ctx.finish(3);

  std::ifstream in(ctx.dir() / "manifest.json");
  const json m = json::parse(in);
  EXPECT_EQ(m["command"], "solve");
  EXPECT_EQ(m["exit_code"], 3);
  EXPECT_EQ(m["input_hash"], hash);
  EXPECT_EQ(m["seeds"]["init"], 7);
  EXPECT_EQ(m["outputs"][0], "chi.csv");
  EXPECT_EQ(m["notes"][0], "hello");
  EXPECT_EQ(m["config"]["omega"], 0.2);
  EXPECT_EQ(m["argv"].size(), 4u);
}

TEST_F(RunContextTest, CollisionsGetSuffix) {
  lab::RunContext a("verify", json::object(), base_, {});
  lab::RunContext b("verify", json::object(), base_, {});
  EXPECT_NE(a.dir(), b.dir());
  EXPECT_TRUE(fs::exists(a.dir()));
  EXPECT_TRUE(fs::exists(b.dir()));
}

}  // namespace

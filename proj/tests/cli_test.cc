#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "commands.h"
#include "oracles.h"

namespace adastream::cli {
namespace {

using adastream::testing::read_file;
using adastream::testing::temp_dir;

int run_cli(std::vector<std::string> args) { return run(args); }

TEST(Cli, GenSyntheticWritesOneGroupPerClipAndBitrate) {
  const auto dir = temp_dir("cli_gen");
  ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "10", "--seed", "7", "--out", dir.string()}), 0);
  std::ifstream grids(dir / "grids.csv");
  std::string line;
  std::size_t rows = 0;
  std::getline(grids, line);
  while (std::getline(grids, line)) ++rows;
  EXPECT_EQ(rows, 10u * 3u * 50u);
  for (const char* f : {"labels.csv", "training.csv", "holdout.csv", "scenario.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
}

TEST(Cli, FullPipelineAndDeterminism) {
  const auto a = temp_dir("cli_det_a");
  const auto b = temp_dir("cli_det_b");
  for (const auto& dir : {a, b}) {
    const std::string d = dir.string();
    ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "40", "--seed", "3", "--out", d}), 0);
    ASSERT_EQ(run_cli({"label", "--grids", d + "/grids.csv", "--out", d + "/label"}), 0);
    ASSERT_EQ(run_cli({"train", "--data", d + "/training.csv", "--epochs", "5", "--seed", "3", "--out",
                       d + "/model"}),
              0);
    ASSERT_EQ(run_cli({"evaluate", "--model", d + "/model/model.txt", "--data", d + "/holdout.csv",
                       "--out", d + "/eval"}),
              0);
    ASSERT_EQ(run_cli({"simulate", "--scenario", d + "/scenario.json", "--model",
                       d + "/model/model.txt", "--jitter", "--seed", "3", "--out", d + "/sim"}),
              0);
    ASSERT_EQ(run_cli({"compare", "--scenario", d + "/scenario.json", "--out", d + "/cmp"}), 0);
  }
  for (const char* f :
       {"grids.csv", "labels.csv", "training.csv", "holdout.csv", "scenario.json",
        "label/labels.csv", "label/savings_curve.csv", "label/distribution.csv", "model/model.txt",
        "model/train_log.csv", "eval/metrics.json", "eval/confusion_f.csv", "eval/confusion_r.csv",
        "sim/trace.csv", "sim/windows.csv", "sim/summary.json", "cmp/comparison.json",
        "cmp/comparison.csv"}) {
    const std::string x = read_file(a / f);
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, read_file(b / f)) << f;
  }
}

TEST(Cli, OutputsDoNotDependOnThreadCount) {
  const auto a = temp_dir("cli_threads_a");
  const auto b = temp_dir("cli_threads_b");
  ::setenv("ADASTREAM_THREADS", "1", 1);
  ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "30", "--out", a.string()}), 0);
  ASSERT_EQ(run_cli({"label", "--grids", (a / "grids.csv").string(), "--out", a.string()}), 0);
  ::setenv("ADASTREAM_THREADS", "8", 1);
  ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "30", "--out", b.string()}), 0);
  ASSERT_EQ(run_cli({"label", "--grids", (b / "grids.csv").string(), "--out", b.string()}), 0);
  ::unsetenv("ADASTREAM_THREADS");
  for (const char* f : {"grids.csv", "training.csv", "labels.csv", "savings_curve.csv", "distribution.csv"}) {
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  }
}

TEST(Cli, MarginChangesLabels) {
  const auto dir = temp_dir("cli_margin");
  const std::string d = dir.string();
  ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "20", "--out", d}), 0);
  ASSERT_EQ(run_cli({"label", "--grids", d + "/grids.csv", "--margin", "0", "--out", d + "/m0"}), 0);
  ASSERT_EQ(run_cli({"label", "--grids", d + "/grids.csv", "--margin", "1", "--out", d + "/m1"}), 0);
  EXPECT_NE(read_file(dir / "m0/labels.csv"), read_file(dir / "m1/labels.csv"));
}

TEST(Cli, ExitCodes) {
  const auto dir = temp_dir("cli_codes");
  const std::string d = dir.string();
  EXPECT_EQ(run_cli({}), kExitArgument);
  EXPECT_EQ(run_cli({"bogus"}), kExitArgument);
  EXPECT_EQ(run_cli({"train"}), kExitArgument);
  EXPECT_EQ(run_cli({"label", "--grids", d + "/x.csv", "--margin", "-1"}), kExitArgument);
  EXPECT_EQ(run_cli({"gen-synthetic", "--clips", "0", "--out", d}), kExitArgument);

  EXPECT_EQ(run_cli({"label", "--grids", d + "/missing.csv", "--out", d}), kExitIo);
  EXPECT_EQ(run_cli({"label", "--grids", "x", "--config", d + "/missing.json"}), kExitIo);
  {
    std::ofstream blocker(dir / "blocker");
    blocker << "file";
  }
  EXPECT_EQ(run_cli({"gen-synthetic", "--clips", "2", "--out", d + "/blocker/sub"}), kExitIo);

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "clip_id,velocity_degps\nx,1\n";
  }
  EXPECT_EQ(run_cli({"label", "--grids", d + "/bad.csv", "--out", d}), kExitSchema);
  EXPECT_EQ(run_cli({"train", "--data", d + "/bad.csv", "--out", d}), kExitSchema);
  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"({"margin_jod": -2})";
  }
  EXPECT_EQ(run_cli({"label", "--grids", d + "/bad.csv", "--config", d + "/bad.json"}), kExitSchema);
  {
    std::ofstream model(dir / "model.txt");
    model << "not a model";
  }
  {
    std::ofstream scenario(dir / "scenario.json");
    scenario << "{}";
  }
  EXPECT_EQ(run_cli({"simulate", "--scenario", d + "/scenario.json", "--model", d + "/model.txt"}),
            kExitSchema);
  EXPECT_EQ(run_cli({"compare", "--scenario", d + "/scenario.json"}), kExitSchema);
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
}

TEST(Cli, InputsAreNotModified) {
  const auto dir = temp_dir("cli_pure");
  const std::string d = dir.string();
  ASSERT_EQ(run_cli({"gen-synthetic", "--clips", "10", "--out", d}), 0);
  const std::string before = read_file(dir / "grids.csv");
  ASSERT_EQ(run_cli({"label", "--grids", d + "/grids.csv", "--out", d + "/l"}), 0);
  EXPECT_EQ(read_file(dir / "grids.csv"), before);
}

}  // namespace
}  // namespace adastream::cli

#ifndef ADASTREAM_TOOLS_COMMANDS_H_
#define ADASTREAM_TOOLS_COMMANDS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "adastream/config.h"

namespace adastream::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitArgument = 2,
  kExitSchema = 3,
  kExitIo = 4,
};

struct GenSyntheticOptions {
  int clips = 500;
  double holdout_fraction = 0.2;
  std::filesystem::path out_dir = ".";
};

// grids.csv, labels.csv, training.csv, holdout.csv and scenario.json.
void gen_synthetic(const RunConfig& config, const GenSyntheticOptions& options);

// labels.csv, savings_curve.csv and distribution.csv.
void label(const RunConfig& config, const std::filesystem::path& grids_csv,
           const std::filesystem::path& out_dir);

// model.txt and train_log.csv.
void train_model(const RunConfig& config, const std::filesystem::path& training_csv,
                 const std::filesystem::path& out_dir);

// metrics.json, confusion_f.csv and confusion_r.csv.
void evaluate(const RunConfig& config, const std::filesystem::path& model_path,
              const std::filesystem::path& data_csv, const std::filesystem::path& out_dir);

// trace.csv, windows.csv and summary.json.
void simulate(const RunConfig& config, const std::filesystem::path& scenario_path,
              const std::filesystem::path& model_path, const std::filesystem::path& out_dir);

// comparison.json and comparison.csv.
void compare(const RunConfig& config, const std::filesystem::path& scenario_path,
             const std::filesystem::path& out_dir);

// Parses argv, runs the subcommand and maps failures onto exit codes.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace adastream::cli

#endif  // ADASTREAM_TOOLS_COMMANDS_H_

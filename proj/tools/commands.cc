#include "commands.h"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>

#include "adastream/csv.h"
#include "adastream/errors.h"
#include "adastream/evaluation.h"
#include "adastream/labeler.h"
#include "adastream/parallel.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/random.h"
#include "adastream/scenario.h"
#include "adastream/simulator.h"
#include "adastream/synthetic.h"

namespace adastream::cli {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<TrainingExample> read_examples(const fs::path& path, const ModeLadder& ladder) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_training_csv(in, ladder);
}

SyntheticQualitySource quality_for(const RunConfig& config, const Scenario& scenario) {
  SyntheticQualityParams params = config.synthetic;
  params.content_detail = scenario.content_detail;
  return SyntheticQualitySource(params);
}

}  // namespace

void gen_synthetic(const RunConfig& config, const GenSyntheticOptions& options) {
  if (options.clips < 1) throw ArgumentError("--clips must be at least 1");
  if (!(options.holdout_fraction >= 0.0 && options.holdout_fraction < 1.0)) {
    throw ArgumentError("--holdout must lie in [0, 1)");
  }
  ensure_dir(options.out_dir);
  const SyntheticDataset ds = generate_synthetic_dataset(
      options.clips, config.seed, config.synthetic, config.bitrates_bps, config.margin_jod,
      config.ladder);

  // Hold out whole clips so no clip contributes to both splits.
  std::vector<std::size_t> order(ds.clips.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed ^ 0x5eed5eed5eedULL);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const auto n_holdout =
      static_cast<std::size_t>(std::floor(options.holdout_fraction * static_cast<double>(order.size())));
  std::vector<bool> held(ds.clips.size(), false);
  for (std::size_t i = 0; i < n_holdout; ++i) held[order[i]] = true;

  const std::size_t per_clip = config.bitrates_bps.size();
  std::vector<TrainingExample> train_rows;
  std::vector<TrainingExample> holdout_rows;
  for (std::size_t k = 0; k < ds.examples.size(); ++k) {
    (held[k / per_clip] ? holdout_rows : train_rows).push_back(ds.examples[k]);
  }

  write_file(options.out_dir / "grids.csv", [&](std::ostream& o) { write_grids(o, ds.grids); });
  write_file(options.out_dir / "labels.csv", [&](std::ostream& o) { write_labels_csv(o, ds.labels); });
  write_file(options.out_dir / "training.csv",
             [&](std::ostream& o) { write_training_csv(o, train_rows); });
  write_file(options.out_dir / "holdout.csv",
             [&](std::ostream& o) { write_training_csv(o, holdout_rows); });

  ScenarioSpec spec;
  spec.duration_s = 20.0;
  spec.mean_velocity_degps = 30.0;
  spec.velocity_swing_degps = 20.0;
  spec.swing_period_s = 8.0;
  spec.content_detail = 0.5;
  spec.bitrate_schedule = {BitrateSegment{0.0, Bitrate(4e6)}, BitrateSegment{10.0, Bitrate(2e6)}};
  spec.seed = config.seed;
  const Scenario scenario = synthesize_scenario(spec);
  write_file(options.out_dir / "scenario.json",
             [&](std::ostream& o) { write_scenario(o, scenario); });
}

void label(const RunConfig& config, const fs::path& grids_csv, const fs::path& out_dir) {
  const std::vector<QualityGrid> grids = load_grids(grids_csv, config.ladder);
  if (grids.empty()) throw DataError("no quality grids in " + grids_csv.string());
  ensure_dir(out_dir);
  const auto labels = parallel_map<LabeledClip>(
      grids.size(), [&](std::size_t i) { return select_efficient(grids[i], config.margin_jod); });

  std::vector<double> margins;
  for (int i = 0; i <= 20; ++i) margins.push_back(i / 20.0);
  const SavingsCurve curve = savings_curve(grids, margins);
  const SelectionDistribution dist = selection_distribution(labels);

  write_file(out_dir / "labels.csv", [&](std::ostream& o) { write_labels_csv(o, labels); });
  write_file(out_dir / "savings_curve.csv",
             [&](std::ostream& o) { write_savings_curve_csv(o, curve); });
  write_file(out_dir / "distribution.csv",
             [&](std::ostream& o) { write_distribution_csv(o, dist); });
}

void train_model(const RunConfig& config, const fs::path& training_csv, const fs::path& out_dir) {
  const std::vector<TrainingExample> examples = read_examples(training_csv, config.ladder);
  ensure_dir(out_dir);
  TrainConfig tc = config.training;
  tc.seed = config.seed;
  TrainReport report;
  const PredictorModel model = train(examples, tc, config.ladder, &report);
  write_file(out_dir / "model.txt", [&](std::ostream& o) { model.save(o); });
  write_file(out_dir / "train_log.csv", [&](std::ostream& o) {
    o << "epoch,loss\n";
    for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
      o << e << ',' << format_double(report.epoch_loss[e]) << '\n';
    }
  });
}

void evaluate(const RunConfig& config, const fs::path& model_path, const fs::path& data_csv,
              const fs::path& out_dir) {
  const PredictorModel model = PredictorModel::load(model_path);
  const std::vector<TrainingExample> examples = read_examples(data_csv, config.ladder);
  if (examples.empty()) throw DataError("no rows in " + data_csv.string());
  ensure_dir(out_dir);
  const EvaluationReport report = evaluate_predictor(examples, model, config.ladder);
  write_file(out_dir / "metrics.json",
             [&](std::ostream& o) { o << evaluation_json(report) << '\n'; });
  write_file(out_dir / "confusion_f.csv",
             [&](std::ostream& o) { write_confusion_csv(o, report.confusion_f); });
  write_file(out_dir / "confusion_r.csv",
             [&](std::ostream& o) { write_confusion_csv(o, report.confusion_r); });
  std::cout << "fps error " << report.error_f_pct << "% (majority " << report.majority_error_f_pct
            << "%), resolution error " << report.error_r_pct << "% (majority "
            << report.majority_error_r_pct << "%)\n";
}

void simulate(const RunConfig& config, const fs::path& scenario_path, const fs::path& model_path,
              const fs::path& out_dir) {
  const Scenario scenario = load_scenario(scenario_path);
  const PredictorModel model = PredictorModel::load(model_path);
  ensure_dir(out_dir);
  SessionOptions options = config.session;
  options.seed = config.seed;
  const SessionTrace trace =
      run_session(scenario, model, config.graph, quality_for(config, scenario), options, config.ladder);
  write_file(out_dir / "trace.csv", [&](std::ostream& o) { write_trace_csv(o, trace); });
  write_file(out_dir / "windows.csv", [&](std::ostream& o) { write_windows_csv(o, trace.windows); });
  write_file(out_dir / "summary.json",
             [&](std::ostream& o) { o << summary_json(trace.summary) << '\n'; });
}

void compare(const RunConfig& config, const fs::path& scenario_path, const fs::path& out_dir) {
  const Scenario scenario = load_scenario(scenario_path);
  ensure_dir(out_dir);
  const BaselineComparison result =
      compare_baselines(scenario, quality_for(config, scenario), config.margin_jod,
                        config.graph.decision_period_s, config.ladder);
  write_file(out_dir / "comparison.json",
             [&](std::ostream& o) { o << comparison_json(result) << '\n'; });
  write_file(out_dir / "comparison.csv", [&](std::ostream& o) {
    o << "policy,mean_quality_jod,mean_pixels_per_second,switch_count_f,switch_count_r\n";
    for (const PolicyReport* p : {&result.fixed, &result.resolution_adaptive, &result.full_adaptive}) {
      o << p->name << ',' << format_double(p->mean_quality_jod) << ','
        << format_double(p->mean_pixels_per_second) << ',' << p->switch_count_f << ','
        << p->switch_count_r << '\n';
    }
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Adaptive frame-rate and resolution selection for streamed rendering"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> margin;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "JSON config overriding ladders, weights and parameters");
  app.add_option("--seed", seed, "Seed for every random draw");
  app.add_option("--margin", margin, "JOD margin for efficient selection (default 0.25)");
  app.add_option("--out", out_dir, "Output directory");

  GenSyntheticOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Generate synthetic grids, labels and training data");
  gen_cmd->add_option("--clips,-n", gen.clips, "Number of synthetic clips")->capture_default_str();
  gen_cmd->add_option("--holdout", gen.holdout_fraction, "Fraction of clips held out")
      ->capture_default_str();

  std::string grids_path;
  auto* label_cmd = app.add_subcommand("label", "Label quality grids with efficient modes");
  label_cmd->add_option("--grids", grids_path, "Quality-grid CSV")->required();

  std::string data_path;
  std::optional<int> epochs;
  auto* train_cmd = app.add_subcommand("train", "Train the mode predictor");
  train_cmd->add_option("--data", data_path, "Training CSV")->required();
  train_cmd->add_option("--epochs", epochs, "Override the number of epochs");

  std::string model_path;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a trained predictor");
  eval_cmd->add_option("--model", model_path, "Model file")->required();
  eval_cmd->add_option("--data", data_path, "Labelled CSV")->required();

  std::string scenario_path;
  bool jitter = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a closed-loop streaming session");
  sim_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  sim_cmd->add_option("--model", model_path, "Model file")->required();
  sim_cmd->add_flag("--jitter", jitter, "Add +/-10% per-frame size noise");

  auto* cmp_cmd = app.add_subcommand("compare", "Compare fixed and adaptive policies");
  cmp_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgument;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) config.seed = *seed;
    if (margin) {
      if (!(*margin >= 0.0)) throw ArgumentError("--margin must be non-negative");
      config.margin_jod = *margin;
    }
    if (epochs) config.training.epochs = *epochs;
    gen.out_dir = out_dir;

    if (*gen_cmd) {
      gen_synthetic(config, gen);
    } else if (*label_cmd) {
      label(config, grids_path, out_dir);
    } else if (*train_cmd) {
      train_model(config, data_path, out_dir);
    } else if (*eval_cmd) {
      evaluate(config, model_path, data_path, out_dir);
    } else if (*sim_cmd) {
      if (jitter) config.session.jitter = true;
      simulate(config, scenario_path, model_path, out_dir);
    } else if (*cmp_cmd) {
      compare(config, scenario_path, out_dir);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "adastream");
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace adastream::cli

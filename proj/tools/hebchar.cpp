// hebchar: generate glyphs, train a knowledge base, classify images and run
// noise-sweep recognition experiments.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hebchar/cli.hpp"

namespace {

struct GridFlags {
  std::size_t rows = hebchar::kDefaultRows;
  std::size_t cols = hebchar::kDefaultCols;
  unsigned threshold = 128;
  CLI::Option* threshold_opt = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--rows", rows, "Feature grid rows")->capture_default_str();
    app.add_option("--cols", cols, "Feature grid columns")->capture_default_str();
    threshold_opt = app.add_option("--threshold", threshold,
                                   "Binarization threshold; pixel < threshold is ink "
                                   "(default 128 for 8-bit, ceil((max+1)/2) in general)");
  }

  hebchar::PreprocessConfig config() const {
    hebchar::PreprocessConfig pp{rows, cols, std::nullopt};
    if (threshold_opt->count()) pp.threshold = threshold;
    return pp;
  }
};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = hebchar::cli;

  CLI::App app{"Offline handwritten character recognition with a Hebbian outer-product net"};
  app.require_subcommand(1);
  app.footer(
      "Defaults: grid 8x6, threshold 128 for 8-bit images (ceil((max+1)/2) in general), "
      "membership 0.5, seed 42, flip rates 0,0.05,0.1,0.2,0.3, trials 100.\n"
      "Exit status: 0 success, 1 usage error, 2 I/O error, 3 data/format error.");
  app.option_defaults()->always_capture_default();

  auto* gen = app.add_subcommand("gen", "Write the 52 built-in glyphs as P1 files plus manifest.csv");
  std::string gen_out = "glyphs";
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

  auto* train = app.add_subcommand("train", "Train a fresh knowledge base from a manifest");
  std::string manifest;
  std::string kb_out = "kb.txt";
  GridFlags train_grid;
  train->add_option("manifest", manifest, "Manifest CSV (path,label)")->required();
  train->add_option("--out", kb_out, "Knowledge-base output file")->capture_default_str();
  train_grid.add_to(*train);

  auto* classify = app.add_subcommand("classify", "Classify one image against a knowledge base");
  std::string kb_in, image;
  double membership = hebchar::kDefaultMembership;
  GridFlags classify_grid;
  classify->add_option("kb", kb_in, "Knowledge-base file")->required();
  classify->add_option("image", image, "PBM/PGM image")->required();
  classify->add_option("--membership", membership, "Membership threshold on normalized score")
      ->capture_default_str();
  classify_grid.add_to(*classify);

  auto* experiment = app.add_subcommand("experiment", "Run a noise-sweep recognition experiment");
  std::string config_path;
  hebchar::ExperimentConfig defaults;
  GridFlags exp_grid;
  double exp_membership = defaults.membership;
  std::uint64_t seed = defaults.seed;
  std::string flip_rates = "0,0.05,0.1,0.2,0.3";
  std::size_t trials = defaults.trials;
  std::string exp_out = defaults.out;
  std::string exp_kb;
  experiment->add_option("config", config_path, "key=value config file (flags override it)");
  exp_grid.add_to(*experiment);
  auto* o_membership = experiment->add_option("--membership", exp_membership, "Membership threshold")
                           ->capture_default_str();
  auto* o_seed = experiment->add_option("--seed", seed, "Base seed")->capture_default_str();
  auto* o_rates = experiment->add_option("--flip-rates", flip_rates, "Comma-separated flip rates")
                      ->capture_default_str();
  auto* o_trials = experiment->add_option("--trials", trials, "Perturbed test patterns per class")
                       ->capture_default_str();
  auto* o_out = experiment->add_option("--out", exp_out, "Report directory")->capture_default_str();
  auto* o_kb = experiment->add_option("--kb", exp_kb, "Evaluate this knowledge base instead of training one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  if (*gen) return cli::cmd_gen(gen_out, std::cout, std::cerr);
  if (*train) return cli::cmd_train(manifest, kb_out, train_grid.config(), std::cout, std::cerr);
  if (*classify)
    return cli::cmd_classify(kb_in, image, classify_grid.config(), membership, std::cout, std::cerr);

  hebchar::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = cli::parse_config(hebchar::read_file(config_path));
    auto* o_rows = experiment->get_option("--rows");
    auto* o_cols = experiment->get_option("--cols");
    if (o_rows->count()) config.rows = exp_grid.rows;
    if (o_cols->count()) config.cols = exp_grid.cols;
    if (exp_grid.threshold_opt->count()) config.threshold = exp_grid.threshold;
    if (o_membership->count()) config.membership = exp_membership;
    if (o_seed->count()) config.seed = seed;
    if (o_rates->count()) config.flip_rates = cli::parse_flip_rates(flip_rates);
    if (o_trials->count()) config.trials = trials;
    if (o_out->count()) config.out = exp_out;
    if (o_kb->count()) config.kb = exp_kb;
  } catch (const hebchar::IoError& e) {
    std::cerr << "hebchar: error: " << e.what() << "\n";
    return cli::kIo;
  } catch (const hebchar::ConfigError& e) {
    std::cerr << "hebchar: error: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::cmd_experiment(config, std::cout, std::cerr);
}

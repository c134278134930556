#pragma once

// Subcommand implementations behind the `hebchar` tool. Each command writes
// results to `out`, a single-line diagnostic to `err` on failure, and
// returns the process exit status.

#include <charconv>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "hebchar/error.hpp"
#include "hebchar/harness.hpp"
#include "hebchar/hebnet.hpp"
#include "hebchar/pnm.hpp"
#include "hebchar/preprocess.hpp"
#include "hebchar/prototypes.hpp"

namespace hebchar::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kData = 3,
};

inline constexpr std::string_view kManifestName = "manifest.csv";

/// File name for a generated glyph; case is spelled out so upper and lower
/// glyphs do not collide on case-insensitive file systems.
inline std::string glyph_file_name(const std::string& label) {
  const bool upper = label.size() == 1 && label[0] >= 'A' && label[0] <= 'Z';
  return (upper ? "upper_" : "lower_") + label + ".pbm";
}

namespace detail {

inline void fail(std::ostream& err, const std::string& msg) { err << "hebchar: error: " << msg << "\n"; }

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw ConfigError(std::string(key), "invalid value '" + std::string(value) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline std::vector<double> parse_flip_rates(std::string_view value) {
  std::vector<double> rates;
  while (true) {
    const std::size_t comma = value.find(',');
    rates.push_back(detail::parse_number<double>("flip_rates", detail::trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return rates;
}

inline void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  if (key == "rows") config.rows = detail::parse_number<std::size_t>(key, value);
  else if (key == "cols") config.cols = detail::parse_number<std::size_t>(key, value);
  else if (key == "threshold") {
    if (value == "auto") config.threshold.reset();
    else config.threshold = detail::parse_number<unsigned>(key, value);
  }
  else if (key == "membership") config.membership = detail::parse_number<double>(key, value);
  else if (key == "flip_rates" || key == "flip_rate") config.flip_rates = parse_flip_rates(value);
  else if (key == "trials") config.trials = detail::parse_number<std::size_t>(key, value);
  else if (key == "seed") config.seed = detail::parse_number<std::uint64_t>(key, value);
  else if (key == "out") config.out = std::string(value);
  else if (key == "kb") config.kb = std::string(value);
  else throw ConfigError(std::string(key), "unknown key");
}

/// Flat key=value file; '#' starts a comment line.
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t lineno = 0;
  for (std::size_t start = 0; start < text.size();) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = detail::trim(text.substr(start, nl - start));
    start = nl + 1;
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key=value");
    apply_setting(config, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return config;
}

inline std::string report_csv_name(double flip_rate) { return "report-fr" + format_double(flip_rate) + ".csv"; }

/// Writes the 52 glyphs as canonical P1 files plus manifest.csv.
inline int cmd_gen(const std::string& out_dir, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError(out_dir, "cannot create directory (" + ec.message() + ")");

    DatasetManifest manifest;
    manifest.echo = {{"rows", std::to_string(kGlyphRows)}, {"cols", std::to_string(kGlyphCols)}};
    for (const auto& label : prototype_labels()) {
      const std::string name = glyph_file_name(label);
      write_file((fs::path(out_dir) / name).string(), write_pnm(grid_to_image(prototype(label)), true));
      manifest.entries.push_back({name, label});
    }
    write_file((fs::path(out_dir) / kManifestName).string(), write_manifest(manifest));
    out << "wrote " << manifest.entries.size() << " glyphs and " << kManifestName << " to " << out_dir << "\n";
    return kOk;
  } catch (const IoError& e) {
    detail::fail(err, e.what());
    return kIo;
  }
}

inline int cmd_train(const std::string& manifest_path, const std::string& kb_path, const PreprocessConfig& pp,
                     std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::string current = manifest_path;
  try {
    if (pp.rows < 1 || pp.cols < 1) throw ConfigError(pp.rows < 1 ? "rows" : "cols", "must be >= 1");
    const auto manifest = parse_manifest(read_file(manifest_path));
    if (manifest.entries.empty()) {
      detail::fail(err, "no training data in '" + manifest_path + "'");
      return kData;
    }
    const auto labels = LabelTable::letters();
    check_labels(manifest, labels);

    const fs::path base = fs::path(manifest_path).parent_path();
    KnowledgeBase kb(pp.rows * pp.cols, labels);
    for (const auto& entry : manifest.entries) {
      current = (base / entry.path).string();
      kb.train(pipeline(parse_pnm(read_file(current)), pp), entry.label);
    }
    current = kb_path;
    write_file(kb_path, save_kb(kb));

    for (std::size_t c = 0; c < kb.classes(); ++c) out << kb.labels()[c] << " " << kb.counts()[c] << "\n";
    out << "trained " << manifest.entries.size() << " samples into " << kb_path << "\n";
    return kOk;
  } catch (const IoError& e) {
    detail::fail(err, e.what());
    return kIo;
  } catch (const ConfigError& e) {
    detail::fail(err, e.what());
    return kUsage;
  } catch (const Error& e) {
    detail::fail(err, current + ": " + e.what());
    return kData;
  }
}

inline int cmd_classify(const std::string& kb_path, const std::string& image_path, const PreprocessConfig& pp,
                        double membership_threshold, std::ostream& out, std::ostream& err) {
  std::string current = kb_path;
  try {
    if (!(membership_threshold >= -1.0 && membership_threshold <= 1.0))
      throw ConfigError("membership", "must lie in [-1, 1]");
    const auto kb = load_kb(read_file(kb_path));
    if (kb.dim() != pp.rows * pp.cols)
      throw ConfigError("rows/cols", "grid " + std::to_string(pp.rows) + "x" + std::to_string(pp.cols) +
                                         " does not match knowledge base dim " + std::to_string(kb.dim()));
    current = image_path;
    const auto result = classify(kb, pipeline(parse_pnm(read_file(image_path)), pp), membership_threshold);
    std::ostringstream line;
    line << result.predicted << " normalized=" << std::fixed << std::setprecision(4)
         << result.predicted_normalized() << " member=" << (result.member ? "true" : "false") << "\n";
    out << line.str();
    return kOk;
  } catch (const IoError& e) {
    detail::fail(err, e.what());
    return kIo;
  } catch (const ConfigError& e) {
    detail::fail(err, e.what());
    return kUsage;
  } catch (const Error& e) {
    detail::fail(err, current + ": " + e.what());
    return kData;
  }
}

/// Runs the sweep and writes report.txt plus one CSV per flip rate into
/// config.out.
inline int cmd_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    validate(config);
    std::vector<RecognitionReport> reports;
    if (config.kb) {
      reports = run_experiment(config, load_kb(read_file(*config.kb)));
    } else {
      reports = run_experiment(config);
    }

    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec) throw IoError(config.out, "cannot create directory (" + ec.message() + ")");
    const std::string text = sweep_text(reports);
    write_file((fs::path(config.out) / "report.txt").string(), text);
    for (const auto& r : reports)
      write_file((fs::path(config.out) / report_csv_name(*r.echo.flip_rate)).string(), report_csv(r));
    out << text;
    return kOk;
  } catch (const IoError& e) {
    detail::fail(err, e.what());
    return kIo;
  } catch (const ConfigError& e) {
    detail::fail(err, e.what());
    return kUsage;
  } catch (const Error& e) {
    detail::fail(err, (config.kb ? *config.kb + ": " : std::string()) + e.what());
    return kData;
  }
}

inline int cmd_experiment(const std::string& config_path, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_config(read_file(config_path));
  } catch (const IoError& e) {
    detail::fail(err, e.what());
    return kIo;
  } catch (const ConfigError& e) {
    detail::fail(err, config_path + ": " + e.what());
    return kUsage;
  }
  return cmd_experiment(config, out, err);
}

}  // namespace hebchar::cli

#pragma once

// Synthetic recognition experiments: seeded glyph perturbation, batch
// evaluation into per-class recognition reports, and the text/CSV formats
// for reports and dataset manifests.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hebchar/error.hpp"
#include "hebchar/hebnet.hpp"
#include "hebchar/preprocess.hpp"
#include "hebchar/prototypes.hpp"
#include "hebchar/rng.hpp"

namespace hebchar {

/// Toggles each cell independently with probability flip_rate. One engine
/// draw is consumed per cell whatever the rate, so for a fixed seed the
/// cells flipped at a lower rate are a subset of those flipped at a higher
/// rate.
inline BinaryGrid perturb(const BinaryGrid& grid, double flip_rate, std::uint64_t seed) {
  if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) throw ConfigError("flip_rate", "must lie in [0, 1]");
  Engine eng(seed);
  BinaryGrid out = grid;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (uniform01(eng) < flip_rate) out.flip(i);
  return out;
}

struct LabeledSample {
  FeatureVector features;
  std::string label;
};

struct ClassResult {
  std::string label;
  std::size_t tested = 0;
  std::size_t correct = 0;
  // Test items whose best normalized score passed the membership threshold.
  std::size_t members = 0;
  // Wrong predictions, in label-table order; never contains `label`.
  std::vector<std::string> false_matches;

  double rate() const { return tested ? 100.0 * static_cast<double>(correct) / static_cast<double>(tested) : 0.0; }
};

/// Settings a report was produced under.
struct ReportEcho {
  std::size_t rows = kDefaultRows;
  std::size_t cols = kDefaultCols;
  std::optional<unsigned> threshold;
  double membership = kDefaultMembership;
  std::optional<double> flip_rate;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
};

struct RecognitionReport {
  // Only classes with at least one test item, in label-table order.
  std::vector<ClassResult> classes;
  ReportEcho echo;

  std::size_t total_tested() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.tested;
    return n;
  }
  std::size_t total_correct() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.correct;
    return n;
  }
  double overall_rate() const {
    const auto t = total_tested();
    return t ? 100.0 * static_cast<double>(total_correct()) / static_cast<double>(t) : 0.0;
  }
};

inline RecognitionReport evaluate(const KnowledgeBase& kb, std::span<const LabeledSample> tests,
                                  double membership_threshold = kDefaultMembership) {
  const std::size_t C = kb.classes();
  std::vector<std::size_t> tested(C, 0), correct(C, 0), members(C, 0);
  std::vector<std::set<std::size_t>> wrong(C);
  for (const auto& t : tests) {
    const std::size_t truth = kb.labels().index_of(t.label);
    const auto result = classify(kb, t.features, membership_threshold);
    ++tested[truth];
    if (result.member) ++members[truth];
    if (result.predicted_index == truth)
      ++correct[truth];
    else
      wrong[truth].insert(result.predicted_index);
  }

  RecognitionReport report;
  report.echo.membership = membership_threshold;
  for (std::size_t c = 0; c < C; ++c) {
    if (!tested[c]) continue;
    ClassResult row{kb.labels()[c], tested[c], correct[c], members[c], {}};
    for (auto w : wrong[c]) row.false_matches.push_back(kb.labels()[w]);
    report.classes.push_back(std::move(row));
  }
  return report;
}

inline std::vector<double> default_flip_rates() { return {0.0, 0.05, 0.1, 0.2, 0.3}; }

struct ExperimentConfig {
  std::size_t rows = kDefaultRows;
  std::size_t cols = kDefaultCols;
  // Unset: ceil((max_value + 1) / 2), i.e. 128 for 8-bit images.
  std::optional<unsigned> threshold;
  double membership = kDefaultMembership;
  std::vector<double> flip_rates = default_flip_rates();
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::string out = ".";
  // Evaluate against this knowledge base instead of training on the glyphs.
  std::optional<std::string> kb;
};

inline void validate(const ExperimentConfig& config) {
  if (config.rows < 1 || config.rows > 1024) throw ConfigError("rows", "must lie in [1, 1024]");
  if (config.cols < 1 || config.cols > 1024) throw ConfigError("cols", "must lie in [1, 1024]");
  if (config.threshold && *config.threshold > 65536) throw ConfigError("threshold", "must lie in [0, 65536]");
  if (!(config.membership >= -1.0 && config.membership <= 1.0))
    throw ConfigError("membership", "must lie in [-1, 1]");
  if (config.flip_rates.empty()) throw ConfigError("flip_rates", "at least one rate required");
  for (double r : config.flip_rates)
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("flip_rate", "must lie in [0, 1]");
  for (std::size_t i = 0; i < config.flip_rates.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (config.flip_rates[i] == config.flip_rates[j]) throw ConfigError("flip_rates", "duplicate rate");
  if (config.trials < 1 || config.trials > 1'000'000) throw ConfigError("trials", "must lie in [1, 1000000]");
  if (config.out.empty()) throw ConfigError("out", "must not be empty");
}

/// Fresh knowledge base holding one training sample per built-in glyph,
/// each rendered and passed through the preprocessing pipeline.
inline KnowledgeBase train_prototypes(std::size_t rows = kDefaultRows, std::size_t cols = kDefaultCols) {
  KnowledgeBase kb(rows * cols, LabelTable::letters());
  const PreprocessConfig pp{rows, cols, std::nullopt};
  for (const auto& label : prototype_labels()) kb.train(pipeline(grid_to_image(prototype(label)), pp), label);
  return kb;
}

/// Runs every flip rate of the sweep against `kb`. Test item (class c,
/// trial t) uses the same perturbation seed at every flip rate.
inline std::vector<RecognitionReport> run_experiment(const ExperimentConfig& config, const KnowledgeBase& kb) {
  validate(config);
  if (kb.dim() != config.rows * config.cols) throw DimensionMismatch(config.rows * config.cols, kb.dim());

  const auto labels = prototype_labels();
  std::vector<BinaryGrid> clean;
  for (const auto& label : labels)
    clean.push_back(to_grid(crop(grid_to_image(prototype(label))), config.rows, config.cols));

  std::vector<RecognitionReport> reports;
  for (double rate : config.flip_rates) {
    std::vector<LabeledSample> tests;
    tests.reserve(labels.size() * config.trials);
    for (std::size_t c = 0; c < labels.size(); ++c)
      for (std::size_t t = 0; t < config.trials; ++t)
        tests.push_back({encode(perturb(clean[c], rate, derive_seed(config.seed, c, t))), labels[c]});

    auto report = evaluate(kb, tests, config.membership);
    report.echo = {config.rows, config.cols, config.threshold, config.membership, rate, config.trials, config.seed};
    reports.push_back(std::move(report));
  }
  return reports;
}

inline std::vector<RecognitionReport> run_experiment(const ExperimentConfig& config) {
  validate(config);
  return run_experiment(config, train_prototypes(config.rows, config.cols));
}

// --- Serialization ---------------------------------------------------------

inline constexpr std::string_view kReportVersionLine = "# hebchar-report v1";
inline constexpr std::string_view kManifestVersionLine = "# hebchar-manifest v1";

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// 100 * num / den rounded half-up to two decimals, computed in integers.
inline std::string format_percent(std::size_t num, std::size_t den) {
  if (den == 0) return "NA";
  const std::uint64_t centi = (20000ull * num + den) / (2ull * den);
  std::string frac = std::to_string(centi % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(centi / 100) + "." + frac;
}

inline std::string format_echo(const ReportEcho& e) {
  std::string s = "rows=" + std::to_string(e.rows) + " cols=" + std::to_string(e.cols) +
                  " threshold=" + (e.threshold ? std::to_string(*e.threshold) : std::string("auto")) +
                  " membership=" + format_double(e.membership);
  if (e.flip_rate) s += " flip_rate=" + format_double(*e.flip_rate);
  if (e.trials) s += " trials=" + std::to_string(*e.trials);
  if (e.seed) s += " seed=" + std::to_string(*e.seed);
  return s;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// CSV with columns label,tested,correct,rate_percent,false_matches.
inline std::string report_csv(const RecognitionReport& report) {
  std::string out(kReportVersionLine);
  out += "\n# " + format_echo(report.echo) + "\n";
  out += "label,tested,correct,rate_percent,false_matches\n";
  for (const auto& c : report.classes) {
    out += c.label + "," + std::to_string(c.tested) + "," + std::to_string(c.correct) + "," +
           format_percent(c.correct, c.tested) + "," + join(c.false_matches, ";") + "\n";
  }
  out += "# overall," + std::to_string(report.total_tested()) + "," + std::to_string(report.total_correct()) +
         "," + format_percent(report.total_correct(), report.total_tested()) + "\n";
  return out;
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace detail

/// Human-readable table: Character, Recognition Rate (%), False Matching.
inline std::string report_text(const RecognitionReport& report) {
  std::string out = "Recognition report (" + format_echo(report.echo) + ")\n";
  out += detail::pad("Character", 11) + detail::pad("Recognition Rate (%)", 22) +
         detail::pad("Members", 9) + "False Matching with other Character\n";
  for (const auto& c : report.classes) {
    out += detail::pad(c.label, 11) + detail::pad(format_percent(c.correct, c.tested), 22) +
           detail::pad(std::to_string(c.members), 9) + join(c.false_matches, ", ") + "\n";
  }
  out += detail::pad("Overall", 11) + format_percent(report.total_correct(), report.total_tested()) + "\n";
  return out;
}

inline std::string sweep_text(const std::vector<RecognitionReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_text(r) + "\n";
  out += detail::pad("flip_rate", 11) + "overall_rate_percent\n";
  for (const auto& r : reports)
    out += detail::pad(r.echo.flip_rate ? format_double(*r.echo.flip_rate) : std::string("-"), 11) +
           format_percent(r.total_correct(), r.total_tested()) + "\n";
  return out;
}

// --- Dataset manifest -------------------------------------------------------

struct ManifestEntry {
  std::string path;
  std::string label;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// CSV "path,label" list; paths are relative to the manifest's directory.
/// `echo` holds key=value settings recorded in the comment lines.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::map<std::string, std::string> echo;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

inline std::string write_manifest(const DatasetManifest& m) {
  std::string out(kManifestVersionLine);
  out += "\n";
  if (!m.echo.empty()) {
    out += "#";
    for (const auto& [k, v] : m.echo) out += " " + k + "=" + v;
    out += "\n";
  }
  out += "path,label\n";
  for (const auto& e : m.entries) out += e.path + "," + e.label + "\n";
  return out;
}

inline DatasetManifest parse_manifest(std::string_view text) {
  DatasetManifest m;
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  if (lines.empty() || lines[0] != kManifestVersionLine)
    throw FormatError("manifest: first line must be '" + std::string(kManifestVersionLine) + "'");

  std::size_t i = 1;
  for (; i < lines.size() && !lines[i].empty() && lines[i][0] == '#'; ++i) {
    std::string_view rest = lines[i].substr(1);
    while (!rest.empty()) {
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      const std::size_t end = std::min(rest.find(' '), rest.size());
      const std::string_view kv = rest.substr(0, end);
      const std::size_t eq = kv.find('=');
      if (eq != std::string_view::npos && eq > 0)
        m.echo[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
      rest.remove_prefix(end);
    }
  }
  if (i >= lines.size() || lines[i] != "path,label") throw FormatError("manifest: missing 'path,label' header");

  std::unordered_set<std::string> seen;
  for (++i; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos || comma == 0 || comma + 1 == line.size())
      throw FormatError("manifest: line " + std::to_string(i + 1) + " is not 'path,label'");
    ManifestEntry e{std::string(line.substr(0, comma)), std::string(line.substr(comma + 1))};
    if (!seen.insert(e.path).second) throw FormatError("manifest: duplicate path '" + e.path + "'");
    m.entries.push_back(std::move(e));
  }
  return m;
}

inline void check_labels(const DatasetManifest& m, const LabelTable& labels) {
  for (const auto& e : m.entries)
    if (!labels.contains(e.label)) throw UnknownLabel(e.label);
}

}  // namespace hebchar

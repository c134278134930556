// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hebchar/cli.hpp"
#include "hebchar/hebchar.hpp"
#include "oracles.hpp"

using namespace hebchar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    r.pass = false;
    r.detail += " [runtime limit " + std::to_string(limit_seconds) + " s exceeded]";
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3f s", secs);
  std::cout << (r.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << timing << ")"
            << (r.detail.empty() ? "" : " - " + r.detail) << std::endl;
  if (!r.pass) ++failures;
}

LabelTable labels_n(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("c" + std::to_string(i));
  return LabelTable(std::move(v));
}

std::vector<oracle::Sample> random_sequence(std::mt19937_64& rng, std::size_t dim, std::size_t classes,
                                            std::size_t length) {
  std::vector<oracle::Sample> seq;
  for (std::size_t i = 0; i < length; ++i) seq.push_back({oracle::random_bipolar(rng, dim), rng() % classes});
  return seq;
}

KnowledgeBase train_all(const std::vector<oracle::Sample>& seq, std::size_t dim, std::size_t classes) {
  KnowledgeBase kb(dim, labels_n(classes));
  for (const auto& s : seq) kb.train(oracle::to_feature(s.x), TargetVector(s.cls, classes));
  return kb;
}

bool equals_oracle(const KnowledgeBase& kb, const std::vector<std::vector<std::int64_t>>& k) {
  for (std::size_t d = 0; d < kb.dim(); ++d)
    for (std::size_t c = 0; c < kb.classes(); ++c)
      if (kb.weight(d, c) != k[d][c]) return false;
  return true;
}

// Row invariants of a report CSV: rate formula and false-match exclusion.
bool csv_invariants_hold(const std::string& csv, std::string& why) {
  std::istringstream in(csv);
  std::string line;
  std::size_t tested_sum = 0, correct_sum = 0, rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("label,", 0) == 0) {
      if (line.rfind("# overall,", 0) == 0) {
        unsigned long t = 0, c = 0;
        double rate = 0;
        if (std::sscanf(line.c_str(), "# overall,%lu,%lu,%lf", &t, &c, &rate) != 3 || t != tested_sum ||
            c != correct_sum || std::abs(rate - 100.0 * c / t) > 0.005 + 1e-9) {
          why = "overall row: " + line;
          return false;
        }
      }
      continue;
    }
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    if (f.size() != 5) {
      why = "bad row: " + line;
      return false;
    }
    const auto tested = std::stoul(f[1]), correct = std::stoul(f[2]);
    tested_sum += tested;
    correct_sum += correct;
    ++rows;
    if (tested == 0 || std::abs(std::stod(f[3]) - 100.0 * correct / tested) > 0.005 + 1e-9) {
      why = "rate formula: " + line;
      return false;
    }
    if (correct == tested && !f[4].empty()) {
      why = "false matches on perfect row: " + line;
      return false;
    }
    std::istringstream fm(f[4]);
    std::string m;
    while (std::getline(fm, m, ';'))
      if (m == f[0]) {
        why = "false match lists true label: " + line;
        return false;
      }
  }
  if (rows == 0) {
    why = "no rows";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  std::cout << "hebchar acceptance suite" << std::endl;

  criterion(1, "outer-product ledger equals brute-force oracle over 200 random sequences", 5.0, [] {
    std::mt19937_64 rng(1001);
    for (int i = 0; i < 200; ++i) {
      const std::size_t dim = 1 + rng() % 48, classes = 1 + rng() % 52, len = rng() % 51;
      const auto seq = random_sequence(rng, dim, classes, len);
      if (!equals_oracle(train_all(seq, dim, classes), oracle::outer_product_sum(seq, dim, classes)))
        return Outcome{false, "mismatch on case " + std::to_string(i)};
    }
    return Outcome{true, "200/200 exact"};
  });

  criterion(2, "classify argmax equals explicit dot-product argmax over 1000 random cases", 5.0, [] {
    std::mt19937_64 rng(1002);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t dim = 1 + rng() % 48, classes = 1 + rng() % 52;
      // Short sequences and small dims make ties common.
      const auto seq = random_sequence(rng, dim, classes, rng() % 51);
      const auto kb = train_all(seq, dim, classes);
      const auto x = oracle::random_bipolar(rng, dim);
      const auto expected = oracle::argmax_class(oracle::outer_product_sum(seq, dim, classes), x);
      if (classify(kb, oracle::to_feature(x)).predicted_index != expected)
        return Outcome{false, "mismatch on case " + std::to_string(i)};
    }
    return Outcome{true, "1000/1000 exact"};
  });

  criterion(3, "orthogonal exact recall, D = 64 (8x8), 52 Sylvester-Hadamard rows", 1.0, [] {
    const auto rows = oracle::hadamard_rows(64);
    const auto labels = LabelTable::letters();
    KnowledgeBase kb(8 * 8, labels);
    for (std::size_t c = 0; c < 52; ++c) kb.train(oracle::to_feature(rows[c]), TargetVector(c, 52));
    for (std::size_t c = 0; c < 52; ++c) {
      const auto r = classify(kb, oracle::to_feature(rows[c]));
      if (r.predicted_index != c || r.normalized[c] != 1.0)
        return Outcome{false, "pattern " + std::to_string(c) + " -> " + r.predicted};
    }
    return Outcome{true, "52/52 at normalized 1.0"};
  });

  const fs::path work = fs::temp_directory_path() / "hebchar_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  criterion(4, "zero-noise pipeline gen -> train -> experiment is 100% over 52 classes", 0, [&] {
    std::ostringstream out, err;
    if (cli::cmd_gen((work / "glyphs").string(), out, err) != cli::kOk) return Outcome{false, err.str()};
    if (cli::cmd_train((work / "glyphs" / "manifest.csv").string(), (work / "kb.txt").string(), {}, out, err) !=
        cli::kOk)
      return Outcome{false, err.str()};
    ExperimentConfig config;
    config.flip_rates = {0.0};
    const auto report = run_experiment(config, load_kb(read_file((work / "kb.txt").string())))[0];
    const bool ok = report.classes.size() == 52 && report.total_correct() == report.total_tested() &&
                    report.total_tested() == 52 * config.trials;
    return Outcome{ok, "overall " + format_percent(report.total_correct(), report.total_tested()) + "% over " +
                           std::to_string(report.classes.size()) + " classes"};
  });

  criterion(5, "degradation sweep {0,0.05,0.1,0.2,0.3}, 100 trials/class, seed 42", 30.0, [] {
    ExperimentConfig config;
    config.flip_rates = {0.0, 0.05, 0.1, 0.2, 0.3};
    config.trials = 100;
    config.seed = 42;
    const auto reports = run_experiment(config);
    std::string detail;
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      detail += (i ? ", " : "") + format_double(config.flip_rates[i]) + ":" +
                format_percent(reports[i].total_correct(), reports[i].total_tested());
      // Compare exact integer tallies (equal totals per rate).
      if (i && reports[i].total_correct() > reports[i - 1].total_correct()) ok = false;
    }
    ok = ok && reports[1].total_correct() > reports[4].total_correct();
    return Outcome{ok, detail};
  });

  criterion(6, "built-in 'A' written as P1 and re-ingested reproduces the extracted-pixel matrix", 0, [] {
    const auto bytes = write_pnm(grid_to_image(prototype("A")), true);
    const auto grid = to_grid(crop(std::get<BinaryImage>(parse_pnm(bytes))), 8, 6);
    const bool first_row = grid.at(0, 0) == 0 && grid.at(0, 1) == 0 && grid.at(0, 2) == 1 && grid.at(0, 3) == 1 &&
                           grid.at(0, 4) == 0 && grid.at(0, 5) == 0;
    return Outcome{grid.cells() == oracle::kFigureA && first_row, "48/48 cells"};
  });

  criterion(7, "identical config+seed gives byte-identical CSVs satisfying row invariants", 0, [&] {
    ExperimentConfig config;
    config.trials = 100;
    std::ostringstream out, err;
    config.out = (work / "run1").string();
    if (cli::cmd_experiment(config, out, err) != cli::kOk) return Outcome{false, err.str()};
    config.out = (work / "run2").string();
    if (cli::cmd_experiment(config, out, err) != cli::kOk) return Outcome{false, err.str()};
    std::size_t files = 0;
    for (double rate : config.flip_rates) {
      const auto name = cli::report_csv_name(rate);
      const auto a = read_file((work / "run1" / name).string());
      const auto b = read_file((work / "run2" / name).string());
      if (a != b) return Outcome{false, name + " differs"};
      std::string why;
      if (!csv_invariants_hold(a, why)) return Outcome{false, name + ": " + why};
      ++files;
    }
    return Outcome{true, std::to_string(files) + " CSV files identical"};
  });

  criterion(8, "PNM and knowledge-base roundtrips exact over 100 random instances each", 0, [] {
    std::mt19937_64 rng(1008);
    for (int i = 0; i < 100; ++i) {
      const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
      const auto bin = oracle::random_binary(rng, w, h, 0.5);
      const auto maxv = static_cast<std::uint16_t>(1 + rng() % 65535);
      std::vector<std::uint16_t> px(w * h);
      for (auto& p : px) p = static_cast<std::uint16_t>(rng() % (maxv + 1u));
      const RasterImage gray(w, h, maxv, px);
      for (bool ascii : {true, false}) {
        if (std::get<BinaryImage>(parse_pnm(write_pnm(bin, ascii))) != bin) return Outcome{false, "bitmap"};
        if (std::get<RasterImage>(parse_pnm(write_pnm(gray, ascii))) != gray) return Outcome{false, "graymap"};
      }
    }
    for (int i = 0; i < 100; ++i) {
      const std::size_t dim = 1 + rng() % 64, classes = 1 + rng() % 52;
      const auto kb = train_all(random_sequence(rng, dim, classes, rng() % 60), dim, classes);
      if (load_kb(save_kb(kb)) != kb) return Outcome{false, "kb case " + std::to_string(i)};
    }
    return Outcome{true, "100 PNM (x4 variants), 100 KB"};
  });

  criterion(9, "properties: crop idempotence, translation/order/scale invariance (100 cases each)", 0, [] {
    std::mt19937_64 rng(1009);
    auto inked = [&](std::size_t w, std::size_t h) {
      auto img = oracle::random_binary(rng, w, h, 0.3);
      img.set(rng() % h, rng() % w, true);
      return img;
    };
    for (int i = 0; i < 100; ++i) {
      const auto once = crop(inked(1 + rng() % 20, 1 + rng() % 20));
      if (crop(once) != once) return Outcome{false, "crop idempotence"};
    }
    for (int i = 0; i < 100; ++i) {
      const std::size_t w = 1 + rng() % 12, h = 1 + rng() % 12;
      const auto img = inked(w, h);
      const std::size_t cw = w + rng() % 20, ch = h + rng() % 20;
      const auto moved = oracle::embed(img, cw, ch, rng() % (ch - h + 1), rng() % (cw - w + 1));
      if (pipeline(moved) != pipeline(img)) return Outcome{false, "translation invariance"};
    }
    for (int i = 0; i < 100; ++i) {
      const std::size_t dim = 1 + rng() % 48, classes = 1 + rng() % 52;
      auto seq = random_sequence(rng, dim, classes, rng() % 51);
      const auto a = train_all(seq, dim, classes);
      std::shuffle(seq.begin(), seq.end(), rng);
      if (train_all(seq, dim, classes) != a) return Outcome{false, "training-order invariance"};
    }
    for (int i = 0; i < 100; ++i) {
      const std::size_t dim = 1 + rng() % 48, classes = 1 + rng() % 52, k = 2 + rng() % 4;
      const auto seq = random_sequence(rng, dim, classes, 1 + rng() % 50);
      std::vector<oracle::Sample> rep;
      for (const auto& s : seq)
        for (std::size_t j = 0; j < k; ++j) rep.push_back(s);
      const auto x = oracle::to_feature(oracle::random_bipolar(rng, dim));
      const auto r1 = classify(train_all(seq, dim, classes), x);
      const auto rk = classify(train_all(rep, dim, classes), x);
      for (std::size_t c = 0; c < classes; ++c)
        if (rk.scores[c] != static_cast<std::int64_t>(k) * r1.scores[c]) return Outcome{false, "scale: scores"};
      if (rk.predicted_index != r1.predicted_index || rk.normalized != r1.normalized)
        return Outcome{false, "scale: argmax/normalized"};
    }
    return Outcome{true, "400 cases"};
  });

  fs::remove_all(work);
  std::cout << (failures ? std::to_string(failures) + " criterion(s) FAILED" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}

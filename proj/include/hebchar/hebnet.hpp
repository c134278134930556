#pragma once

// Hetero-associative character memory trained with the additive
// outer-product rule  K <- K + x t^T  (x bipolar input, t one-hot target).
//
// Column c of K is the sum of every input trained as class c, so recall is
// a correlation argmax over stored class prototypes.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hebchar/error.hpp"
#include "hebchar/preprocess.hpp"

namespace hebchar {

inline constexpr double kDefaultMembership = 0.5;

/// Ordered, unique class names. Names must be non-empty and whitespace-free
/// so they survive the space-separated knowledge-base file.
class LabelTable {
 public:
  explicit LabelTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error("label table: no labels");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw Error("label table: empty label");
      for (char ch : l)
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == ',' || ch == ';')
          throw Error("label table: label '" + l + "' contains a separator character");
      if (!seen.insert(l).second) throw Error("label table: duplicate label '" + l + "'");
    }
  }

  /// A-Z then a-z.
  static LabelTable letters() {
    std::vector<std::string> v;
    for (char c = 'A'; c <= 'Z'; ++c) v.emplace_back(1, c);
    for (char c = 'a'; c <= 'z'; ++c) v.emplace_back(1, c);
    return LabelTable(std::move(v));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw UnknownLabel(std::string(label));
  }

  bool contains(std::string_view label) const {
    for (const auto& l : labels_)
      if (l == label) return true;
    return false;
  }

  friend bool operator==(const LabelTable&, const LabelTable&) = default;

 private:
  std::vector<std::string> labels_;
};

/// One-hot class code.
class TargetVector {
 public:
  TargetVector(std::size_t class_index, std::size_t classes)
      : index_(class_index), classes_(classes) {
    if (class_index >= classes)
      throw Error("target: class index " + std::to_string(class_index) + " out of range");
  }

  std::size_t class_index() const noexcept { return index_; }
  std::size_t classes() const noexcept { return classes_; }
  int operator[](std::size_t c) const { return c == index_ ? 1 : 0; }

  std::vector<int> one_hot() const {
    std::vector<int> v(classes_, 0);
    v[index_] = 1;
    return v;
  }

 private:
  std::size_t index_;
  std::size_t classes_;
};

struct Classification {
  std::size_t predicted_index = 0;
  std::string predicted;
  std::vector<std::int64_t> scores;
  // scores[c] / (counts[c] * dim), or 0 for untrained classes.
  std::vector<double> normalized;
  bool member = false;

  double predicted_normalized() const { return normalized[predicted_index]; }
};

class KnowledgeBase {
 public:
  /// All weights and counts start at zero.
  KnowledgeBase(std::size_t dim, LabelTable labels)
      : dim_(dim),
        labels_(std::move(labels)),
        weights_(dim * labels_.size(), 0),
        counts_(labels_.size(), 0) {
    if (dim == 0) throw Error("knowledge base: dim must be >= 1");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t classes() const noexcept { return labels_.size(); }
  const LabelTable& labels() const noexcept { return labels_; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  /// Row-major D x C.
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  std::int64_t weight(std::size_t d, std::size_t c) const { return weights_[d * classes() + c]; }

  std::vector<std::int64_t> column(std::size_t c) const {
    std::vector<std::int64_t> col(dim_);
    for (std::size_t d = 0; d < dim_; ++d) col[d] = weight(d, c);
    return col;
  }

  /// K <- K + input * target^T. With a one-hot target the outer product is
  /// non-zero only in column target.class_index(), which receives input.
  void train(const FeatureVector& input, const TargetVector& target) {
    if (input.dim() != dim_) throw DimensionMismatch(dim_, input.dim());
    if (target.classes() != classes()) throw DimensionMismatch(classes(), target.classes());
    const std::size_t c = target.class_index();
    for (std::size_t d = 0; d < dim_; ++d) weights_[d * classes() + c] += input[d];
    ++counts_[c];
  }

  void train(const FeatureVector& input, std::string_view label) {
    train(input, TargetVector(labels_.index_of(label), classes()));
  }

  /// Correlation of input with every class column.
  std::vector<std::int64_t> scores(const FeatureVector& input) const {
    if (input.dim() != dim_) throw DimensionMismatch(dim_, input.dim());
    std::vector<std::int64_t> s(classes(), 0);
    for (std::size_t d = 0; d < dim_; ++d) {
      const std::int64_t x = input[d];
      const std::int64_t* row = weights_.data() + d * classes();
      for (std::size_t c = 0; c < classes(); ++c) s[c] += x * row[c];
    }
    return s;
  }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  friend KnowledgeBase load_kb(std::string_view);

  KnowledgeBase(std::size_t dim, LabelTable labels, std::vector<std::int64_t> weights,
                std::vector<std::int64_t> counts)
      : dim_(dim), labels_(std::move(labels)), weights_(std::move(weights)), counts_(std::move(counts)) {}

  std::size_t dim_;
  LabelTable labels_;
  std::vector<std::int64_t> weights_;
  std::vector<std::int64_t> counts_;
};

inline KnowledgeBase new_kb(std::size_t dim, LabelTable labels = LabelTable::letters()) {
  return KnowledgeBase(dim, std::move(labels));
}

inline KnowledgeBase train_pair(KnowledgeBase kb, const FeatureVector& input, const TargetVector& target) {
  kb.train(input, target);
  return kb;
}

/// Argmax over raw scores (lowest index wins ties). `member` tests the best
/// normalized score against membership_threshold.
inline Classification classify(const KnowledgeBase& kb, const FeatureVector& input,
                               double membership_threshold = kDefaultMembership) {
  Classification out;
  out.scores = kb.scores(input);
  out.normalized.assign(kb.classes(), 0.0);
  double best_norm = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < kb.classes(); ++c) {
    if (out.scores[c] > out.scores[out.predicted_index]) out.predicted_index = c;
    const std::int64_t n = kb.counts()[c];
    if (n > 0)
      out.normalized[c] = static_cast<double>(out.scores[c]) /
                          static_cast<double>(n * static_cast<std::int64_t>(kb.dim()));
    best_norm = std::max(best_norm, out.normalized[c]);
  }
  out.predicted = kb.labels()[out.predicted_index];
  out.member = best_norm >= membership_threshold;
  return out;
}

inline bool membership(const KnowledgeBase& kb, const FeatureVector& input,
                       double threshold = kDefaultMembership) {
  return classify(kb, input, threshold).member;
}

inline constexpr std::string_view kKbMagic = "HEBCHAR-KB";
inline constexpr std::string_view kKbVersionLine = "HEBCHAR-KB v1";

/// Text serialization:
///   HEBCHAR-KB v1
///   dim D classes C
///   <C labels>
///   <C counts>
///   D rows of C signed weights
inline std::string save_kb(const KnowledgeBase& kb) {
  std::string out(kKbVersionLine);
  out += "\ndim " + std::to_string(kb.dim()) + " classes " + std::to_string(kb.classes()) + "\n";
  for (std::size_t c = 0; c < kb.classes(); ++c) {
    if (c) out += ' ';
    out += kb.labels()[c];
  }
  out += '\n';
  for (std::size_t c = 0; c < kb.classes(); ++c) {
    if (c) out += ' ';
    out += std::to_string(kb.counts()[c]);
  }
  out += '\n';
  for (std::size_t d = 0; d < kb.dim(); ++d) {
    for (std::size_t c = 0; c < kb.classes(); ++c) {
      if (c) out += ' ';
      out += std::to_string(kb.weight(d, c));
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::int64_t parse_int(std::string_view s, const char* what) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw KbFormatError(KbFormatError::Kind::corrupt, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline KnowledgeBase load_kb(std::string_view bytes) {
  using Kind = KbFormatError::Kind;
  if (bytes.empty() || bytes.back() != '\n')
    throw KbFormatError(Kind::corrupt, "missing trailing newline");

  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < bytes.size();) {
    const std::size_t nl = bytes.find('\n', start);
    std::string_view line = bytes.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }

  if (lines[0] != kKbVersionLine) {
    if (lines[0].substr(0, kKbMagic.size()) == kKbMagic)
      throw KbFormatError(Kind::version, "unsupported version line '" + std::string(lines[0]) + "'");
    throw KbFormatError(Kind::corrupt, "bad header line");
  }
  if (lines.size() < 4) throw KbFormatError(Kind::corrupt, "truncated header");

  const auto dims = detail::split_fields(lines[1]);
  if (dims.size() != 4 || dims[0] != "dim" || dims[2] != "classes")
    throw KbFormatError(Kind::corrupt, "bad dimension line");
  const std::int64_t dim = detail::parse_int(dims[1], "dim");
  const std::int64_t classes = detail::parse_int(dims[3], "classes");
  if (dim <= 0 || classes <= 0 || dim > (1 << 24) || classes > (1 << 20))
    throw KbFormatError(Kind::corrupt, "dimensions out of range");
  const auto D = static_cast<std::size_t>(dim);
  const auto C = static_cast<std::size_t>(classes);

  const auto label_fields = detail::split_fields(lines[2]);
  if (label_fields.size() != C) throw KbFormatError(Kind::corrupt, "label count does not match classes");
  std::vector<std::string> labels(label_fields.begin(), label_fields.end());
  std::optional<LabelTable> table;
  try {
    table.emplace(std::move(labels));
  } catch (const Error& e) {
    throw KbFormatError(Kind::corrupt, e.what());
  }

  const auto count_fields = detail::split_fields(lines[3]);
  if (count_fields.size() != C) throw KbFormatError(Kind::corrupt, "count entries do not match classes");
  std::vector<std::int64_t> counts(C);
  for (std::size_t c = 0; c < C; ++c) {
    counts[c] = detail::parse_int(count_fields[c], "count");
    if (counts[c] < 0) throw KbFormatError(Kind::corrupt, "negative count");
  }

  if (lines.size() - 4 != D)
    throw KbFormatError(Kind::corrupt, "weight rows (" + std::to_string(lines.size() - 4) +
                                           ") inconsistent with dim " + std::to_string(D));
  std::vector<std::int64_t> weights(D * C);
  for (std::size_t d = 0; d < D; ++d) {
    const auto row = detail::split_fields(lines[4 + d]);
    if (row.size() != C)
      throw KbFormatError(Kind::corrupt, "weight row " + std::to_string(d) + " has " +
                                             std::to_string(row.size()) + " entries, expected " +
                                             std::to_string(C));
    for (std::size_t c = 0; c < C; ++c) {
      const std::int64_t w = detail::parse_int(row[c], "weight");
      if (w > counts[c] || -w > counts[c])
        throw KbFormatError(Kind::corrupt, "weight magnitude exceeds class count");
      weights[d * C + c] = w;
    }
  }
  return KnowledgeBase(D, std::move(*table), std::move(weights), std::move(counts));
}

}  // namespace hebchar

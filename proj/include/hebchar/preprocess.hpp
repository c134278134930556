#pragma once

// Feature extraction: crop a bitmap to its ink, resample it onto a fixed
// rows x cols grid by block majority, and flatten to a bipolar vector.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hebchar/error.hpp"
#include "hebchar/pnm.hpp"

namespace hebchar {

inline constexpr std::size_t kDefaultRows = 8;
inline constexpr std::size_t kDefaultCols = 6;

/// Fixed-size {0,1} feature matrix, row-major.
class BinaryGrid {
 public:
  BinaryGrid(std::size_t rows, std::size_t cols)
      : BinaryGrid(rows, cols, std::vector<std::uint8_t>(rows * cols, 0)) {}

  BinaryGrid(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> cells)
      : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows == 0 || cols == 0) throw Error("binary grid: zero dimension");
    if (cells_.size() != rows * cols) throw DimensionMismatch(rows * cols, cells_.size());
    for (auto v : cells_)
      if (v > 1) throw Error("binary grid: cell outside {0,1}");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, bool v) { cells_[r * cols_ + c] = v ? 1 : 0; }
  void flip(std::size_t i) { cells_[i] ^= 1u; }

  friend bool operator==(const BinaryGrid&, const BinaryGrid&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;
};

/// Bipolar {-1,+1} feature vector; the net's input.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<std::int8_t> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error("feature vector: empty");
    for (auto v : values_)
      if (v != 1 && v != -1) throw Error("feature vector: value outside {-1,+1}");
  }

  std::size_t dim() const noexcept { return values_.size(); }
  const std::vector<std::int8_t>& values() const noexcept { return values_; }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }

  FeatureVector negated() const {
    std::vector<std::int8_t> v(values_);
    for (auto& x : v) x = static_cast<std::int8_t>(-x);
    return FeatureVector(std::move(v));
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<std::int8_t> values_;
};

struct PreprocessConfig {
  std::size_t rows = kDefaultRows;
  std::size_t cols = kDefaultCols;
  // Unset means default_threshold(max_value) of each raster.
  std::optional<unsigned> threshold;
};

/// Tight bounding box of all 1-bits.
inline BinaryImage crop(const BinaryImage& image) {
  std::size_t top = image.height(), bottom = 0, left = image.width(), right = 0;
  bool any = false;
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      if (!image.at(r, c)) continue;
      any = true;
      top = std::min(top, r);
      bottom = std::max(bottom, r);
      left = std::min(left, c);
      right = std::max(right, c);
    }
  }
  if (!any) throw BlankImageError();

  BinaryImage out(right - left + 1, bottom - top + 1);
  for (std::size_t r = top; r <= bottom; ++r)
    for (std::size_t c = left; c <= right; ++c) out.set(r - top, c - left, image.at(r, c));
  return out;
}

namespace detail {

// Source span [first, last) feeding target cell `i` of `n` along an axis of
// length `len`. Never empty: when upscaling, the nearest source pixel
// floor(i * len / n) is replicated.
struct Span {
  std::size_t first;
  std::size_t last;
};

inline Span block_span(std::size_t i, std::size_t n, std::size_t len) {
  const std::size_t first = i * len / n;
  const std::size_t last = std::max(first + 1, (i + 1) * len / n);
  return {first, last};
}

}  // namespace detail

/// Block-majority resampling onto rows x cols. A cell is 1 when at least
/// half of its block is ink.
inline BinaryGrid to_grid(const BinaryImage& image, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ConfigError(rows == 0 ? "rows" : "cols", "must be >= 1");
  BinaryGrid grid(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto ys = detail::block_span(r, rows, image.height());
    for (std::size_t c = 0; c < cols; ++c) {
      const auto xs = detail::block_span(c, cols, image.width());
      std::size_t ink = 0;
      for (std::size_t y = ys.first; y < ys.last; ++y)
        for (std::size_t x = xs.first; x < xs.last; ++x) ink += image.at(y, x);
      const std::size_t area = (ys.last - ys.first) * (xs.last - xs.first);
      grid.set(r, c, 2 * ink >= area);
    }
  }
  return grid;
}

/// Row-major flatten, 1 -> +1 and 0 -> -1.
inline FeatureVector encode(const BinaryGrid& grid) {
  std::vector<std::int8_t> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = grid.cells()[i] ? 1 : -1;
  return FeatureVector(std::move(v));
}

/// Inverse of encode for a known grid shape.
inline BinaryGrid decode(const FeatureVector& fv, std::size_t rows, std::size_t cols) {
  if (fv.dim() != rows * cols) throw DimensionMismatch(rows * cols, fv.dim());
  std::vector<std::uint8_t> cells(fv.dim());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = fv[i] > 0 ? 1 : 0;
  return BinaryGrid(rows, cols, std::move(cells));
}

inline BinaryImage grid_to_image(const BinaryGrid& grid) {
  return BinaryImage(grid.cols(), grid.rows(), grid.cells());
}

inline BinaryImage as_binary(const AnyImage& image, const PreprocessConfig& config) {
  if (const auto* bin = std::get_if<BinaryImage>(&image)) return *bin;
  const auto& raster = std::get<RasterImage>(image);
  return binarize(raster, config.threshold.value_or(default_threshold(raster.max_value())));
}

/// encode(to_grid(crop(binarize-if-needed(image)))).
inline FeatureVector pipeline(const AnyImage& image, const PreprocessConfig& config = {}) {
  return encode(to_grid(crop(as_binary(image, config)), config.rows, config.cols));
}

inline FeatureVector pipeline(const BinaryImage& image, const PreprocessConfig& config = {}) {
  return encode(to_grid(crop(image), config.rows, config.cols));
}

}  // namespace hebchar

#pragma once

// Test-only reference computations. Nothing here calls into the library's
// training, scoring, or resampling code.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hebchar/hebchar.hpp"

namespace oracle {

// The extracted-pixel matrix for 'A' (8 x 6), typed in independently of the
// library's glyph table.
inline const std::vector<std::uint8_t> kFigureA = {
    0, 0, 1, 1, 0, 0,  //
    0, 1, 0, 0, 1, 0,  //
    1, 0, 0, 0, 0, 1,  //
    1, 0, 0, 0, 0, 1,  //
    1, 1, 1, 1, 1, 1,  //
    1, 0, 0, 0, 0, 1,  //
    1, 0, 0, 0, 0, 1,  //
    1, 0, 0, 0, 0, 1,  //
};

struct Sample {
  std::vector<int> x;  // bipolar
  std::size_t cls;
};

/// K[d][c] = sum over samples of x[d] * t[c] with t one-hot, via the full
/// explicit outer product.
inline std::vector<std::vector<std::int64_t>> outer_product_sum(const std::vector<Sample>& samples,
                                                                std::size_t dim, std::size_t classes) {
  std::vector<std::vector<std::int64_t>> k(dim, std::vector<std::int64_t>(classes, 0));
  for (const auto& s : samples) {
    std::vector<int> target(classes, 0);
    target[s.cls] = 1;
    for (std::size_t d = 0; d < dim; ++d)
      for (std::size_t c = 0; c < classes; ++c) k[d][c] += static_cast<std::int64_t>(s.x[d]) * target[c];
  }
  return k;
}

/// Explicit per-class dot products, argmax with lowest index on ties.
inline std::size_t argmax_class(const std::vector<std::vector<std::int64_t>>& k, const std::vector<int>& x) {
  const std::size_t classes = k.empty() ? 0 : k[0].size();
  std::size_t best = 0;
  std::int64_t best_score = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    std::int64_t score = 0;
    for (std::size_t d = 0; d < k.size(); ++d) score += k[d][c] * x[d];
    if (c == 0 || score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

/// Rows of the Sylvester-Hadamard matrix of order n (a power of two):
/// H[i][j] = (-1)^popcount(i & j). Rows are pairwise orthogonal.
inline std::vector<std::vector<int>> hadamard_rows(std::size_t n) {
  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = (__builtin_popcountll(i & j) % 2) ? -1 : 1;
  return h;
}

inline std::vector<int> random_bipolar(std::mt19937_64& rng, std::size_t dim) {
  std::vector<int> v(dim);
  for (auto& x : v) x = (rng() & 1) ? 1 : -1;
  return v;
}

inline hebchar::FeatureVector to_feature(const std::vector<int>& v) {
  return hebchar::FeatureVector(std::vector<std::int8_t>(v.begin(), v.end()));
}

inline std::vector<int> to_ints(const hebchar::FeatureVector& f) {
  return std::vector<int>(f.values().begin(), f.values().end());
}

/// Block majority by assigning every source pixel to its block, valid when
/// height >= rows and width >= cols. Cell r owns source row y iff
/// floor(r * H / R) <= y < floor((r + 1) * H / R).
inline std::vector<std::uint8_t> block_majority(const hebchar::BinaryImage& img, std::size_t rows,
                                                std::size_t cols) {
  std::vector<std::size_t> ink(rows * cols, 0), area(rows * cols, 0);
  const std::size_t H = img.height(), W = img.width();
  for (std::size_t y = 0; y < H; ++y) {
    std::size_t r = 0;
    while (r + 1 < rows && (r + 1) * H / rows <= y) ++r;
    for (std::size_t x = 0; x < W; ++x) {
      std::size_t c = 0;
      while (c + 1 < cols && (c + 1) * W / cols <= x) ++c;
      ++area[r * cols + c];
      ink[r * cols + c] += img.at(y, x);
    }
  }
  std::vector<std::uint8_t> out(rows * cols);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2 * ink[i] >= area[i] ? 1 : 0;
  return out;
}

inline hebchar::BinaryImage random_binary(std::mt19937_64& rng, std::size_t w, std::size_t h, double density) {
  std::bernoulli_distribution ink(density);
  hebchar::BinaryImage img(w, h);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) img.set(r, c, ink(rng));
  return img;
}

/// Embeds `img` at (top, left) in a blank canvas.
inline hebchar::BinaryImage embed(const hebchar::BinaryImage& img, std::size_t canvas_w, std::size_t canvas_h,
                                  std::size_t top, std::size_t left) {
  hebchar::BinaryImage out(canvas_w, canvas_h);
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) out.set(top + r, left + c, img.at(r, c));
  return out;
}

}  // namespace oracle

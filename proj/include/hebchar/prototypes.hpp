#pragma once

// Built-in 8x6 glyphs for the 52 English letters. Every glyph touches all
// four borders, so cropping a rendered glyph returns it unchanged. 'A' is
// the classic extracted-pixel matrix:
//
//   0 0 1 1 0 0
//   0 1 0 0 1 0
//   1 0 0 0 0 1
//   1 0 0 0 0 1
//   1 1 1 1 1 1
//   1 0 0 0 0 1
//   1 0 0 0 0 1
//   1 0 0 0 0 1
//
// Any two glyphs differ in at least 4 cells.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hebchar/error.hpp"
#include "hebchar/preprocess.hpp"

namespace hebchar {

inline constexpr std::size_t kGlyphRows = 8;
inline constexpr std::size_t kGlyphCols = 6;

namespace detail {

struct Glyph {
  char label;
  std::array<std::string_view, kGlyphRows> rows;
};

// clang-format off
inline constexpr std::array<Glyph, 52> kGlyphs{{
    {'A', {"..##..", ".#..#.", "#....#", "#....#", "######", "#....#", "#....#", "#....#"}},
    {'B', {"#####.", "#....#", "#....#", "#####.", "#....#", "#....#", "#....#", "#####."}},
    {'C', {".####.", "#....#", "#.....", "#.....", "#.....", "#.....", "#....#", ".####."}},
    {'D', {"####..", "#...#.", "#....#", "#....#", "#....#", "#....#", "#...#.", "####.."}},
    {'E', {"######", "#.....", "#.....", "#####.", "#.....", "#.....", "#.....", "######"}},
    {'F', {"######", "#.....", "#.....", "#####.", "#.....", "#.....", "#.....", "#....."}},
    {'G', {".####.", "#....#", "#.....", "#.....", "#..###", "#....#", "#....#", ".####."}},
    {'H', {"#....#", "#....#", "#....#", "######", "#....#", "#....#", "#....#", "#....#"}},
    {'I', {"######", "..##..", "..##..", "..##..", "..##..", "..##..", "..##..", "######"}},
    {'J', {"######", "....#.", "....#.", "....#.", "....#.", "#...#.", "#...#.", ".###.."}},
    {'K', {"#....#", "#...#.", "#..#..", "###...", "#..#..", "#...#.", "#....#", "#....#"}},
    {'L', {"#.....", "#.....", "#.....", "#.....", "#.....", "#.....", "#.....", "######"}},
    {'M', {"#....#", "##..##", "#.##.#", "#.##.#", "#....#", "#....#", "#....#", "#....#"}},
    {'N', {"#....#", "##...#", "##...#", "#.#..#", "#..#.#", "#...##", "#...##", "#....#"}},
    {'O', {".####.", "#....#", "#....#", "#....#", "#....#", "#....#", "#....#", ".####."}},
    {'P', {"#####.", "#....#", "#....#", "#....#", "#####.", "#.....", "#.....", "#....."}},
    {'Q', {".####.", "#....#", "#....#", "#....#", "#....#", "#..#.#", "#...#.", ".###.#"}},
    {'R', {"#####.", "#....#", "#....#", "#####.", "#..#..", "#...#.", "#....#", "#....#"}},
    {'S', {".####.", "#....#", "#.....", ".####.", ".....#", ".....#", "#....#", ".####."}},
    {'T', {"######", "..##..", "..##..", "..##..", "..##..", "..##..", "..##..", "..##.."}},
    {'U', {"#....#", "#....#", "#....#", "#....#", "#....#", "#....#", "#....#", ".####."}},
    {'V', {"#....#", "#....#", "#....#", "#....#", ".#..#.", ".#..#.", "..##..", "..##.."}},
    {'W', {"#....#", "#....#", "#....#", "#....#", "#.##.#", "#.##.#", "##..##", "#....#"}},
    {'X', {"#....#", ".#..#.", ".#..#.", "..##..", "..##..", ".#..#.", ".#..#.", "#....#"}},
    {'Y', {"#....#", ".#..#.", ".#..#.", "..##..", "..##..", "..##..", "..##..", "..##.."}},
    {'Z', {"######", ".....#", "....#.", "...#..", "..#...", ".#....", "#.....", "######"}},
    {'a', {".####.", ".....#", ".....#", ".#####", "#....#", "#....#", "#...##", ".###.#"}},
    {'b', {"#.....", "#.....", "#.....", "#.###.", "##...#", "#....#", "##...#", "#.###."}},
    {'c', {"..####", ".#....", "#.....", "#.....", "#.....", "#.....", ".#....", "..####"}},
    {'d', {".....#", ".....#", ".....#", ".###.#", "#...##", "#....#", "#...##", ".###.#"}},
    {'e', {".####.", "#....#", "#....#", "######", "#.....", "#.....", "#....#", ".####."}},
    {'f', {"...###", "..#...", "..#...", "######", "..#...", "..#...", "..#...", "..#..."}},
    {'g', {".###.#", "#...##", "#....#", "#...##", ".###.#", ".....#", "#....#", ".####."}},
    {'h', {"#.....", "#.....", "#.....", "#.###.", "##...#", "#....#", "#....#", "#....#"}},
    {'i', {"..#...", "......", "..#...", "###...", "..#...", "..#...", "..#...", "######"}},
    {'j', {".....#", "......", "....##", ".....#", ".....#", ".....#", "#....#", ".####."}},
    {'k', {"#.....", "#.....", "#...#.", "#..#..", "###...", "#..#..", "#...#.", "#....#"}},
    {'l', {"###...", "..#...", "..#...", "..#...", "..#...", "..#...", "..#...", "######"}},
    {'m', {"##.##.", "#.#..#", "#.#..#", "#.#..#", "#.#..#", "#.#..#", "#.#..#", "#.#..#"}},
    {'n', {"#.###.", "##...#", "#....#", "#....#", "#....#", "#....#", "#....#", "#....#"}},
    {'o', {"..##..", ".#..#.", "#....#", "#....#", "#....#", "#....#", ".#..#.", "..##.."}},
    {'p', {"#.###.", "##...#", "#....#", "##...#", "#.###.", "#.....", "#.....", "#....."}},
    {'q', {".###.#", "#...##", "#....#", "#...##", ".###.#", ".....#", ".....#", ".....#"}},
    {'r', {"#.###.", "##...#", "#.....", "#.....", "#.....", "#.....", "#.....", "#....."}},
    {'s', {".#####", "#.....", "#.....", ".####.", ".....#", ".....#", ".....#", "#####."}},
    {'t', {"..#...", "..#...", "######", "..#...", "..#...", "..#...", "..#..#", "...##."}},
    {'u', {"#...#.", "#...#.", "#...#.", "#...#.", "#...#.", "#...#.", "#..##.", ".##.##"}},
    {'v', {"#....#", "#....#", ".#..#.", ".#..#.", ".#..#.", "..##..", "..##..", "..##.."}},
    {'w', {"#....#", "#....#", "#....#", "#.##.#", "#.##.#", "#.##.#", "#.##.#", ".#..#."}},
    {'x', {"#....#", "#....#", ".#..#.", "..##..", "..##..", ".#..#.", "#....#", "#....#"}},
    {'y', {"#....#", "#....#", "#....#", "#...##", ".###.#", ".....#", "#....#", ".####."}},
    {'z', {"######", "#...#.", "...#..", "..#...", ".#....", "#.....", "#....#", "######"}},
}};
// clang-format on

}  // namespace detail

/// The 52 glyph labels, A-Z then a-z.
inline std::vector<std::string> prototype_labels() {
  std::vector<std::string> out;
  for (const auto& g : detail::kGlyphs) out.emplace_back(1, g.label);
  return out;
}

/// Built-in glyph for `label`; throws UnknownLabel otherwise.
inline BinaryGrid prototype(std::string_view label) {
  for (const auto& g : detail::kGlyphs) {
    if (label.size() != 1 || g.label != label[0]) continue;
    BinaryGrid grid(kGlyphRows, kGlyphCols);
    for (std::size_t r = 0; r < kGlyphRows; ++r)
      for (std::size_t c = 0; c < kGlyphCols; ++c) grid.set(r, c, g.rows[r][c] == '#');
    return grid;
  }
  throw UnknownLabel(std::string(label));
}

}  // namespace hebchar

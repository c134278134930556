#pragma once

// Portable-anymap (PBM/PGM) reading and writing, plus thresholding of
// grayscale rasters into ink/background bitmaps.
//
// Supported variants: P1 and P4 (bitmaps), P2 and P5 (graymaps).

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hebchar/error.hpp"

namespace hebchar {

/// Grayscale raster, row-major, values in [0, max_value].
class RasterImage {
 public:
  RasterImage(std::size_t width, std::size_t height, std::uint16_t max_value = 255)
      : RasterImage(width, height, max_value,
                    std::vector<std::uint16_t>(width * height, 0)) {}

  RasterImage(std::size_t width, std::size_t height, std::uint16_t max_value,
              std::vector<std::uint16_t> pixels)
      : width_(width), height_(height), max_value_(max_value), pixels_(std::move(pixels)) {
    if (width == 0 || height == 0) throw Error("raster image: zero dimension");
    if (max_value == 0) throw Error("raster image: max_value must be positive");
    if (pixels_.size() != width * height)
      throw DimensionMismatch(width * height, pixels_.size());
    for (auto p : pixels_)
      if (p > max_value_) throw Error("raster image: pixel exceeds max_value");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::uint16_t max_value() const noexcept { return max_value_; }
  const std::vector<std::uint16_t>& pixels() const noexcept { return pixels_; }

  std::uint16_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  void set(std::size_t row, std::size_t col, std::uint16_t v) {
    if (v > max_value_) throw Error("raster image: pixel exceeds max_value");
    pixels_[row * width_ + col] = v;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::uint16_t max_value_;
  std::vector<std::uint16_t> pixels_;
};

/// Bitmap, row-major, 1 = foreground (ink).
class BinaryImage {
 public:
  BinaryImage(std::size_t width, std::size_t height)
      : BinaryImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

  BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
      : width_(width), height_(height), bits_(std::move(bits)) {
    if (width == 0 || height == 0) throw Error("binary image: zero dimension");
    if (bits_.size() != width * height) throw DimensionMismatch(width * height, bits_.size());
    for (auto b : bits_)
      if (b > 1) throw Error("binary image: bit outside {0,1}");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::uint8_t at(std::size_t row, std::size_t col) const { return bits_[row * width_ + col]; }
  void set(std::size_t row, std::size_t col, bool v) { bits_[row * width_ + col] = v ? 1 : 0; }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

using AnyImage = std::variant<BinaryImage, RasterImage>;

namespace detail {

// Guards allocation on hostile headers.
inline constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 28;

class PnmReader {
 public:
  explicit PnmReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  std::size_t remaining() const noexcept { return at_end() ? 0 : bytes_.size() - pos_; }

  // Fails early when the input cannot hold `needed` more bytes.
  void require(std::uint64_t needed) const {
    if (needed > remaining())
      throw ParseError(ParseError::Kind::truncated, bytes_.size(), "fewer samples than width*height");
  }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = bytes_[pos_];
      if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  // Reads a signed decimal header field.
  std::int64_t header_int(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (at_end())
      throw ParseError(ParseError::Kind::truncated, pos_, std::string("missing ") + field);
    bool negative = false;
    if (bytes_[pos_] == '-' || bytes_[pos_] == '+') {
      negative = bytes_[pos_] == '-';
      ++pos_;
    }
    std::int64_t value = 0;
    std::size_t digits = 0;
    while (!at_end() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      if (value < (std::int64_t{1} << 40)) value = value * 10 + (bytes_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    if (digits == 0 || (!at_end() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#'))
      throw ParseError(ParseError::Kind::malformed, start, std::string("malformed ") + field);
    return negative ? -value : value;
  }

  std::size_t dimension(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    const std::int64_t v = header_int(field);
    if (v <= 0)
      throw ParseError(ParseError::Kind::bad_dimension, start,
                       std::string(field) + " must be positive");
    if (static_cast<std::uint64_t>(v) > kMaxPixels)
      throw ParseError(ParseError::Kind::bad_dimension, start, std::string(field) + " too large");
    return static_cast<std::size_t>(v);
  }

  // Binary rasters start after exactly one whitespace byte.
  void single_space() {
    if (at_end()) throw ParseError(ParseError::Kind::truncated, pos_, "missing raster data");
    if (!is_space(bytes_[pos_]))
      throw ParseError(ParseError::Kind::malformed, pos_, "expected whitespace before raster");
    ++pos_;
  }

  // One plain-PBM sample: a lone '0' or '1', digits need no separator.
  std::uint8_t plain_bit() {
    skip_space_and_comments();
    if (at_end()) throw ParseError(ParseError::Kind::truncated, pos_, "fewer samples than width*height");
    const char c = bytes_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return static_cast<std::uint8_t>(c - '0');
    }
    if (c >= '2' && c <= '9')
      throw ParseError(ParseError::Kind::sample_out_of_range, pos_, "bit sample exceeds 1");
    throw ParseError(ParseError::Kind::malformed, pos_, "unexpected byte in bitmap data");
  }

  std::uint16_t plain_sample(std::uint16_t max_value) {
    skip_space_and_comments();
    if (at_end()) throw ParseError(ParseError::Kind::truncated, pos_, "fewer samples than width*height");
    const std::size_t start = pos_;
    std::uint32_t value = 0;
    std::size_t digits = 0;
    while (!at_end() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      if (value <= 65536) value = value * 10 + static_cast<std::uint32_t>(bytes_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    if (digits == 0 || (!at_end() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#'))
      throw ParseError(ParseError::Kind::malformed, start, "malformed sample");
    if (value > max_value)
      throw ParseError(ParseError::Kind::sample_out_of_range, start, "sample exceeds max_value");
    return static_cast<std::uint16_t>(value);
  }

  std::uint8_t raw_byte() {
    if (at_end()) throw ParseError(ParseError::Kind::truncated, pos_, "fewer samples than width*height");
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a P1, P2, P4 or P5 file. Bitmaps come back as BinaryImage
/// (1 = black bit), graymaps as RasterImage. Bytes after the last declared
/// sample are never inspected.
inline AnyImage parse_pnm(std::string_view bytes) {
  using Kind = ParseError::Kind;
  if (bytes.size() < 2 || bytes[0] != 'P')
    throw ParseError(Kind::unknown_magic, 0, "unknown magic number");
  const char variant = bytes[1];
  if (variant != '1' && variant != '2' && variant != '4' && variant != '5')
    throw ParseError(Kind::unknown_magic, 0, "unknown magic number");
  if (bytes.size() > 2 && !detail::PnmReader::is_space(bytes[2]) && bytes[2] != '#')
    throw ParseError(Kind::unknown_magic, 0, "unknown magic number");

  detail::PnmReader in(bytes);
  // Skip the magic.
  in.raw_byte();
  in.raw_byte();

  const std::size_t width = in.dimension("width");
  const std::size_t height = in.dimension("height");
  if (static_cast<std::uint64_t>(width) * height > detail::kMaxPixels)
    throw ParseError(Kind::bad_dimension, in.pos(), "image too large");
  const std::size_t n = width * height;

  if (variant == '1' || variant == '4') {
    const std::size_t row_bytes = (width + 7) / 8;
    // Each plain sample takes at least one byte.
    in.require(variant == '1' ? n : row_bytes * height + 1);
    std::vector<std::uint8_t> bits(n);
    if (variant == '1') {
      for (auto& b : bits) b = in.plain_bit();
    } else {
      in.single_space();
      for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t k = 0; k < row_bytes; ++k) {
          const std::uint8_t byte = in.raw_byte();
          for (std::size_t bit = 0; bit < 8; ++bit) {
            const std::size_t c = k * 8 + bit;
            if (c >= width) break;
            bits[r * width + c] = (byte >> (7 - bit)) & 1u;
          }
        }
      }
    }
    return BinaryImage(width, height, std::move(bits));
  }

  in.skip_space_and_comments();
  const std::size_t max_pos = in.pos();
  const std::int64_t max_value = in.header_int("max_value");
  if (max_value <= 0 || max_value > 65535)
    throw ParseError(Kind::malformed, max_pos, "max_value outside [1, 65535]");
  const auto maxv = static_cast<std::uint16_t>(max_value);

  in.require(variant == '2' ? n : n * (maxv > 255 ? 2 : 1) + 1);
  std::vector<std::uint16_t> pixels(n);
  if (variant == '2') {
    for (auto& p : pixels) p = in.plain_sample(maxv);
  } else {
    in.single_space();
    const bool wide = maxv > 255;
    for (auto& p : pixels) {
      const std::size_t at = in.pos();
      std::uint16_t v = in.raw_byte();
      if (wide) v = static_cast<std::uint16_t>((v << 8) | in.raw_byte());
      if (v > maxv) throw ParseError(Kind::sample_out_of_range, at, "sample exceeds max_value");
      p = v;
    }
  }
  return RasterImage(width, height, maxv, std::move(pixels));
}

/// Canonical bitmap form: single '\n' separators, one row per line in P1.
inline std::string write_pnm(const BinaryImage& image, bool ascii) {
  std::string out = ascii ? "P1\n" : "P4\n";
  out += std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
  if (ascii) {
    for (std::size_t r = 0; r < image.height(); ++r) {
      for (std::size_t c = 0; c < image.width(); ++c) {
        if (c) out += ' ';
        out += image.at(r, c) ? '1' : '0';
      }
      out += '\n';
    }
  } else {
    for (std::size_t r = 0; r < image.height(); ++r) {
      for (std::size_t k = 0; k < (image.width() + 7) / 8; ++k) {
        std::uint8_t byte = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          const std::size_t c = k * 8 + bit;
          if (c < image.width() && image.at(r, c)) byte |= static_cast<std::uint8_t>(0x80u >> bit);
        }
        out += static_cast<char>(byte);
      }
    }
  }
  return out;
}

inline std::string write_pnm(const RasterImage& image, bool ascii) {
  std::string out = ascii ? "P2\n" : "P5\n";
  out += std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
  out += std::to_string(image.max_value()) + "\n";
  if (ascii) {
    for (std::size_t r = 0; r < image.height(); ++r) {
      for (std::size_t c = 0; c < image.width(); ++c) {
        if (c) out += ' ';
        out += std::to_string(image.at(r, c));
      }
      out += '\n';
    }
  } else {
    const bool wide = image.max_value() > 255;
    for (auto p : image.pixels()) {
      if (wide) out += static_cast<char>(p >> 8);
      out += static_cast<char>(p & 0xFF);
    }
  }
  return out;
}

inline std::string write_pnm(const AnyImage& image, bool ascii) {
  return std::visit([ascii](const auto& img) { return write_pnm(img, ascii); }, image);
}

/// Midpoint threshold ceil((max_value + 1) / 2); 128 for 8-bit images.
inline unsigned default_threshold(std::uint16_t max_value) noexcept {
  return (static_cast<unsigned>(max_value) + 2) / 2;
}

/// Dark pixels are ink: bit = 1 iff pixel < threshold.
inline BinaryImage binarize(const RasterImage& image, unsigned threshold) {
  if (threshold > static_cast<unsigned>(image.max_value()) + 1)
    throw ConfigError("threshold", "must lie in [0, max_value + 1] = [0, " +
                                       std::to_string(image.max_value() + 1) + "]");
  std::vector<std::uint8_t> bits(image.pixels().size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = image.pixels()[i] < threshold ? 1 : 0;
  return BinaryImage(image.width(), image.height(), std::move(bits));
}

inline BinaryImage binarize(const RasterImage& image) {
  return binarize(image, default_threshold(image.max_value()));
}

// File helpers. Both throw IoError naming the path on failure.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path, "cannot read");
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "cannot write");
}

}  // namespace hebchar

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hebchar {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed portable-anymap input. `offset` is the byte position in the
// input where the problem was detected.
class ParseError : public Error {
 public:
  enum class Kind {
    unknown_magic,
    malformed,
    bad_dimension,
    truncated,
    sample_out_of_range,
  };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error("pnm: " + what + " at byte " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// The image has no foreground pixel, so there is nothing to crop.
class BlankImageError : public Error {
 public:
  BlankImageError() : Error("blank image: no foreground pixel") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown label '" + label + "'"), label_(label) {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

// Knowledge-base file problems.
class KbFormatError : public Error {
 public:
  enum class Kind { version, corrupt };

  KbFormatError(Kind kind, const std::string& what)
      : Error(std::string(kind == Kind::version ? "kb version error: "
                                                : "kb corrupt: ") +
              what),
        kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Invalid configuration value; `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("config: " + field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(what + " '" + path + "'"), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Malformed manifest or report-side text file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hebchar

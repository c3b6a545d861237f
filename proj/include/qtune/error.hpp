#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qtune {

enum class ErrorKind {
  kInvalidInput,
  kInvalidParams,
  kEncodingRange,
  kCorruptStream,
  kUnsupportedFeature,
  kUnsupportedSize,
  kUnsupportedFormat,
  kInsufficientData,
  kIo,
  kParse,
  kVersion,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the category and
/// corrupt-stream errors also carry the byte offset where decoding failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& message, std::size_t offset);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> offset_;
};

}  // namespace qtune

#include "qtune/error.hpp"

namespace qtune {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInvalidParams: return "invalid-params";
    case ErrorKind::kEncodingRange: return "encoding-range";
    case ErrorKind::kCorruptStream: return "corrupt-stream";
    case ErrorKind::kUnsupportedFeature: return "unsupported-feature";
    case ErrorKind::kUnsupportedSize: return "unsupported-size";
    case ErrorKind::kUnsupportedFormat: return "unsupported-format";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kVersion: return "version";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, std::size_t offset)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message + " (at byte " +
                         std::to_string(offset) + ")"),
      kind_(kind),
      offset_(offset) {}

}  // namespace qtune

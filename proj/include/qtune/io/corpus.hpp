#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qtune {

struct CorpusClass {
  std::string name;
  std::vector<std::filesystem::path> images;
};

/// Class-per-directory listing of a dataset root. Classes and images are both
/// sorted lexicographically so every consumer sees the same order.
struct CorpusManifest {
  std::filesystem::path root;
  std::vector<CorpusClass> classes;
  /// FNV-1a 64 over the ordered "class/file" listing, as 16 hex digits.
  std::string digest;

  std::size_t image_count() const;
};

/// Recognized image extensions: .ppm .pgm .png .jpg .jpeg (case-insensitive).
bool is_image_path(const std::filesystem::path& path);

/// One class per immediate subdirectory of `root`. Throws kIo if the root is
/// missing and kInvalidInput if it has no class directories.
CorpusManifest scan_corpus(const std::filesystem::path& root);

std::string listing_digest(const std::vector<CorpusClass>& classes);

}  // namespace qtune

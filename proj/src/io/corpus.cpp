#include "qtune/io/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>

#include "qtune/error.hpp"

namespace qtune {

namespace fs = std::filesystem;

std::size_t CorpusManifest::image_count() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.images.size();
  return n;
}

bool is_image_path(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext == ".ppm" || ext == ".pgm" || ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::string listing_digest(const std::vector<CorpusClass>& classes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& c : classes) {
    for (const auto& img : c.images) feed(c.name + "/" + img.filename().string() + "\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CorpusManifest scan_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorKind::kIo, "corpus root " + root.string() + " is not a directory");
  }
  CorpusManifest m;
  m.root = root;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    CorpusClass cls{entry.path().filename().string(), {}};
    for (const auto& f : fs::directory_iterator(entry.path())) {
      if (f.is_regular_file() && is_image_path(f.path())) cls.images.push_back(f.path());
    }
    std::sort(cls.images.begin(), cls.images.end(),
              [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
              });
    m.classes.push_back(std::move(cls));
  }
  if (m.classes.empty()) {
    throw Error(ErrorKind::kInvalidInput, "corpus root " + root.string() + " has no class directories");
  }
  std::sort(m.classes.begin(), m.classes.end(),
            [](const CorpusClass& a, const CorpusClass& b) { return a.name < b.name; });
  m.digest = listing_digest(m.classes);
  return m;
}

}  // namespace qtune

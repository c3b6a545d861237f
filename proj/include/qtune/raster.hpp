#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qtune {

using Plane = std::vector<std::uint8_t>;

/// Decoded 8-bit image stored as planar channels (1 = gray, 3 = RGB).
class RasterImage {
 public:
  RasterImage() = default;
  /// Zero-filled image; throws kInvalidInput on bad geometry or channel count.
  RasterImage(int width, int height, int channels);
  /// Takes ownership of existing planes; each must hold width*height samples.
  RasterImage(int width, int height, std::vector<Plane> planes);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return static_cast<int>(planes_.size()); }
  std::size_t sample_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<std::uint8_t> plane(int c) { return planes_.at(static_cast<std::size_t>(c)); }
  std::span<const std::uint8_t> plane(int c) const {
    return planes_.at(static_cast<std::size_t>(c));
  }
  const std::vector<Plane>& planes() const noexcept { return planes_; }

  std::uint8_t& at(int c, int x, int y) {
    return planes_[static_cast<std::size_t>(c)][static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t at(int c, int x, int y) const {
    return planes_[static_cast<std::size_t>(c)][static_cast<std::size_t>(y) * width_ + x];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Plane> planes_;
};

}  // namespace qtune

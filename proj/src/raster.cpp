#include "qtune/raster.hpp"

#include <string>

#include "qtune/error.hpp"

namespace qtune {

namespace {

void check_geometry(int width, int height, std::size_t channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::kInvalidInput, "image dimensions must be positive, got " +
                                              std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorKind::kInvalidInput,
                "image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height, int channels)
    : width_(width), height_(height) {
  check_geometry(width, height, static_cast<std::size_t>(channels < 0 ? 0 : channels));
  planes_.assign(static_cast<std::size_t>(channels), Plane(sample_count(), 0));
}

RasterImage::RasterImage(int width, int height, std::vector<Plane> planes)
    : width_(width), height_(height), planes_(std::move(planes)) {
  check_geometry(width, height, planes_.size());
  for (const auto& p : planes_) {
    if (p.size() != sample_count()) {
      throw Error(ErrorKind::kInvalidInput, "plane holds " + std::to_string(p.size()) +
                                                " samples, expected " +
                                                std::to_string(sample_count()));
    }
  }
}

}  // namespace qtune

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jfs/error.hpp"

namespace jfs {

struct Dims {
  int width = 0;
  int height = 0;

  std::size_t pixels() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB raster, interleaved, row-major.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height) : dims_{width, height} {
    if (width < 1 || height < 1) throw DimensionError("image dimensions must be >= 1");
    data_.assign(dims_.pixels() * 3, 0);
  }
  RgbImage(int width, int height, std::vector<std::uint8_t> interleaved)
      : dims_{width, height}, data_(std::move(interleaved)) {
    if (width < 1 || height < 1) throw DimensionError("image dimensions must be >= 1");
    if (data_.size() != dims_.pixels() * 3) throw DimensionError("image buffer size mismatch");
  }

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }

  Rgb at(int x, int y) const noexcept {
    const auto i = index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    const auto i = index(x, y);
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
            static_cast<std::size_t>(x)) * 3;
  }

  Dims dims_;
  std::vector<std::uint8_t> data_;
};

}  // namespace jfs

#include "jfs/fss/echo.hpp"

#include <cstdint>
#include <stdexcept>

namespace jfs::fss {

BinaryMask resample_nearest(const BinaryMask& mask, Dims target) {
  BinaryMask out(target);
  const std::int64_t sw = mask.width(), sh = mask.height();
  for (int y = 0; y < target.height; ++y) {
    const auto sy = static_cast<int>(y * sh / target.height);
    for (int x = 0; x < target.width; ++x) {
      const auto sx = static_cast<int>(x * sw / target.width);
      if (mask.get(sx, sy)) out.set(x, y);
    }
  }
  return out;
}

BinaryMask echo_predict(const RgbImage& query, std::span<const SupportRef> support) {
  if (support.empty()) throw std::invalid_argument("echo needs at least one support pair");
  return resample_nearest(support.front().mask, query.dims());
}

}  // namespace jfs::fss

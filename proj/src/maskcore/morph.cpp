#include "jfs/maskcore/morph.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace jfs {
namespace {

// One separable pass over a byte plane. For dilate a pixel is set if any
// pixel in the window is set; for erode, if the window is entirely set and
// in-bounds. Windows are evaluated with prefix counts.
void pass(const std::vector<std::uint8_t>& in, std::vector<std::uint8_t>& out, int len,
          int lines, std::size_t stride, std::size_t step, int radius, MorphOp op) {
  std::vector<int> prefix(static_cast<std::size_t>(len) + 1);
  const int window = 2 * radius + 1;
  for (int line = 0; line < lines; ++line) {
    const std::size_t base = static_cast<std::size_t>(line) * stride;
    prefix[0] = 0;
    for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + in[base + i * step];
    for (int i = 0; i < len; ++i) {
      const int lo = i - radius;
      const int hi = i + radius;
      const int count = prefix[std::min(hi, len - 1) + 1] - prefix[std::max(lo, 0)];
      bool v;
      if (op == MorphOp::kDilate)
        v = count > 0;
      else
        v = lo >= 0 && hi < len && count == window;
      out[base + i * step] = v ? 1 : 0;
    }
  }
}

}  // namespace

BinaryMask morph(const BinaryMask& mask, MorphOp op, int radius) {
  if (radius < 1) throw std::invalid_argument("morph radius must be >= 1");
  const int w = mask.width();
  const int h = mask.height();
  auto plane = mask.to_bytes();
  std::vector<std::uint8_t> tmp(plane.size());
  pass(plane, tmp, w, h, static_cast<std::size_t>(w), 1, radius, op);
  pass(tmp, plane, h, w, 1, static_cast<std::size_t>(w), radius, op);
  return BinaryMask::from_bytes(w, h, plane);
}

}  // namespace jfs

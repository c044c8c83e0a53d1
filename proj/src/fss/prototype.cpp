#include "jfs/fss/prototype.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "jfs/simd/kernels.hpp"

namespace jfs::fss {
namespace {

double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

PrototypeBackend::PrototypeBackend(PrototypeConfig config) : config_(config) {
  if (!(config_.spatial_weight >= 0.0)) throw std::invalid_argument("spatial_weight must be >= 0");
}

Prototypes compute_prototypes(const PrototypeConfig& config, std::span<const SupportRef> support) {
  std::uint64_t color_sum[2][3] = {};
  std::uint64_t count[2] = {};
  std::vector<double> pos[2][2];
  for (const auto& s : support) {
    if (s.image.dims() != s.mask.dims()) throw DimensionError("support image and mask sizes differ");
    const int w = s.image.width();
    const int h = s.image.height();
    std::uint64_t coord_sum[2][2] = {};
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int side = s.mask.get(x, y) ? 0 : 1;
        const auto c = s.image.at(x, y);
        color_sum[side][0] += c.r;
        color_sum[side][1] += c.g;
        color_sum[side][2] += c.b;
        coord_sum[side][0] += static_cast<std::uint64_t>(x);
        coord_sum[side][1] += static_cast<std::uint64_t>(y);
        ++count[side];
      }
    }
    for (int side = 0; side < 2; ++side) {
      pos[side][0].push_back(static_cast<double>(coord_sum[side][0]) / w);
      pos[side][1].push_back(static_cast<double>(coord_sum[side][1]) / h);
    }
  }
  Prototypes p;
  p.fg_count = count[0];
  p.bg_count = count[1];
  for (int side = 0; side < 2; ++side) {
    if (count[side] == 0) continue;
    auto& out = side == 0 ? p.fg : p.bg;
    const double n = static_cast<double>(count[side]);
    for (int c = 0; c < 3; ++c) out[c] = static_cast<double>(color_sum[side][c]) / (255.0 * n);
    out[3] = config.spatial_weight * sorted_sum(pos[side][0]) / n;
    out[4] = config.spatial_weight * sorted_sum(pos[side][1]) / n;
  }
  return p;
}

BinaryMask prototype_predict(const PrototypeConfig& config, const RgbImage& query,
                             std::span<const SupportRef> support) {
  if (!(config.spatial_weight >= 0.0)) throw std::invalid_argument("spatial_weight must be >= 0");
  const Prototypes p = compute_prototypes(config, support);
  const int w = query.width();
  const int h = query.height();
  if (p.fg_count == 0) return BinaryMask(w, h);
  if (p.bg_count == 0) return BinaryMask::full(w, h);

  const std::size_t n = query.dims().pixels();
  std::vector<float> planes(5 * n);
  float* r = planes.data();
  float* g = r + n;
  float* b = g + n;
  float* fx = b + n;
  float* fy = fx + n;
  const auto& bytes = query.bytes();
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<float>(bytes[3 * i] / 255.0);
    g[i] = static_cast<float>(bytes[3 * i + 1] / 255.0);
    b[i] = static_cast<float>(bytes[3 * i + 2] / 255.0);
  }
  for (int y = 0; y < h; ++y) {
    const float yv = static_cast<float>(config.spatial_weight * y / h);
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      fx[i] = static_cast<float>(config.spatial_weight * x / w);
      fy[i] = yv;
    }
  }
  simd::ClassifyArgs args{{r, g, b, fx, fy}, {}, {}, n};
  for (int f = 0; f < 5; ++f) {
    args.fg[f] = static_cast<float>(p.fg[f]);
    args.bg[f] = static_cast<float>(p.bg[f]);
  }
  std::vector<std::uint8_t> out(n);
  simd::active().classify(args, out.data());
  return BinaryMask::from_bytes(w, h, out);
}

}  // namespace jfs::fss

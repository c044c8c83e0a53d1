#include "jfs/synth/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "jfs/maskcore/metrics.hpp"
#include "jfs/maskcore/morph.hpp"
#include "jfs/rng.hpp"

namespace jfs::synth {
namespace {

constexpr int kMaxSteerSteps = 400;

double spurious_probability(DegradeMode mode) {
  switch (mode) {
    case DegradeMode::kCorrupt:
      return 0.85;
    case DegradeMode::kImprove:
    case DegradeMode::kMarginal:
      return 0.5;
  }
  return 0.5;
}

struct Counts {
  std::size_t inter;
  std::size_t uni;
  double iou() const { return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni); }
};

Counts counts(const BinaryMask& m, const BinaryMask& gt) {
  const auto inter = intersection_area(m, gt);
  return {inter, m.area() + gt.area() - inter};
}

// Ellipse of roughly `area` pixels centred on (cx, cy), clipped to the frame.
void paint_blob(BinaryMask& target, const BinaryMask* restrict_to, int cx, int cy, double area,
                bool value, Rng& rng) {
  const double aspect = rng.uniform(0.5, 2.0);
  const double rx = std::max(0.5, std::sqrt(area * aspect / std::numbers::pi));
  const double ry = std::max(0.5, std::sqrt(area / (aspect * std::numbers::pi)));
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - rx)));
  const int x1 = std::min(target.width() - 1, static_cast<int>(std::ceil(cx + rx)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - ry)));
  const int y1 = std::min(target.height() - 1, static_cast<int>(std::ceil(cy + ry)));
  std::size_t budget = static_cast<std::size_t>(std::max(1.0, std::floor(area)));
  for (int y = y0; y <= y1 && budget > 0; ++y) {
    for (int x = x0; x <= x1 && budget > 0; ++x) {
      const double dx = (x - cx) / rx;
      const double dy = (y - cy) / ry;
      if (dx * dx + dy * dy > 1.0) continue;
      if (restrict_to != nullptr && !restrict_to->get(x, y)) continue;
      if (target.get(x, y) == value) continue;
      target.set(x, y, value);
      --budget;
    }
  }
}

std::vector<std::size_t> set_pixels(const BinaryMask& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.pixel_count(); ++i)
    if (m.test(i)) out.push_back(i);
  return out;
}

// Spurious blob grown from a background pixel touching the mask (or anywhere
// if the mask is empty); missing blob carved from the mask's true pixels.
void add_blob(BinaryMask& m, const BinaryMask& gt, bool spurious, double area, Rng& rng) {
  const int w = m.width();
  if (spurious) {
    BinaryMask ring = m.empty() ? ~m : mask_and(dilate(m, 1), ~m);
    if (ring.empty()) ring = ~m;
    const auto pool = set_pixels(ring);
    if (pool.empty()) return;
    const auto p = pool[rng.below(pool.size())];
    paint_blob(m, nullptr, static_cast<int>(p % w), static_cast<int>(p / w), area, true, rng);
  } else {
    const BinaryMask hits = mask_and(m, gt);
    const auto pool = set_pixels(hits.empty() ? m : hits);
    if (pool.empty()) return;
    const auto p = pool[rng.below(pool.size())];
    paint_blob(m, nullptr, static_cast<int>(p % w), static_cast<int>(p / w), area, false, rng);
  }
}

// Dilate or erode only within a random half of the frame.
void jitter(BinaryMask& m, int radius, bool grow, Rng& rng) {
  const BinaryMask changed = grow ? mask_and(dilate(m, radius), ~m) : mask_and(m, ~erode(m, radius));
  const bool vertical = rng.bernoulli(0.5);
  const bool low_side = rng.bernoulli(0.5);
  const int extent = vertical ? m.width() : m.height();
  const int cut = rng.between(0, extent);
  for (std::size_t i = 0; i < m.pixel_count(); ++i) {
    if (!changed.test(i)) continue;
    const int coord = vertical ? static_cast<int>(i % m.width()) : static_cast<int>(i / m.width());
    if ((coord < cut) == low_side) m.assign(i, grow);
  }
}

}  // namespace

const char* mode_name(DegradeMode mode) noexcept {
  switch (mode) {
    case DegradeMode::kImprove:
      return "improve";
    case DegradeMode::kCorrupt:
      return "corrupt";
    case DegradeMode::kMarginal:
      return "marginal";
  }
  return "unknown";
}

BinaryMask degrade_mask(const BinaryMask& gt, std::uint64_t seed, const DegradeConfig& config) {
  if (config.gap_lo < 0.0 || config.gap_hi > 1.0 || config.gap_lo > config.gap_hi)
    throw std::invalid_argument("target_gap band must satisfy 0 <= lo <= hi <= 1");
  return degrade_to_band(gt, seed, config, 1.0 - config.gap_hi, 1.0 - config.gap_lo);
}

BinaryMask degrade_to_band(const BinaryMask& gt, std::uint64_t seed, const DegradeConfig& config,
                           double iou_lo, double iou_hi) {
  if (iou_lo < 0.0 || iou_hi > 1.0 || iou_lo > iou_hi)
    throw std::invalid_argument("IoU band must satisfy 0 <= lo <= hi <= 1");
  if (config.boundary_jitter_radius < 0 || config.blob_rate < 0.0)
    throw std::invalid_argument("jitter radius and blob rate must be non-negative");
  if (config.mode != DegradeMode::kMarginal && gt.empty())
    throw GenerationError(std::string("cannot degrade an empty mask in ") + mode_name(config.mode) + " mode");

  const double p_spurious = spurious_probability(config.mode);
  const double gt_area = static_cast<double>(std::max<std::size_t>(gt.area(), 1));

  for (int attempt = 0; attempt < kMaxDegradeAttempts; ++attempt) {
    Rng rng(child_seed(seed, static_cast<std::uint64_t>(attempt)));
    const double target = rng.uniform(iou_lo, iou_hi);
    BinaryMask m = gt;

    if (config.boundary_jitter_radius > 0 && !m.empty()) {
      const int r = rng.between(1, config.boundary_jitter_radius);
      jitter(m, r, rng.bernoulli(p_spurious), rng);
    }
    const int blobs = rng.poisson(config.blob_rate);
    for (int b = 0; b < blobs; ++b)
      add_blob(m, gt, rng.bernoulli(p_spurious), gt_area * rng.uniform(0.02, 0.12), rng);

    Counts c = counts(m, gt);
    if (c.iou() < iou_lo) continue;

    for (int step = 0; step < kMaxSteerSteps && c.iou() > iou_hi; ++step) {
      const bool spurious = rng.bernoulli(p_spurious) || c.inter == 0;
      // Pixels to add (outside gt) or remove (inside gt) to land on target.
      const double need = spurious ? static_cast<double>(c.inter) / target - static_cast<double>(c.uni)
                                   : static_cast<double>(c.inter) - target * static_cast<double>(c.uni);
      if (!std::isfinite(need)) break;
      add_blob(m, gt, spurious, std::max(1.0, need * rng.uniform(0.6, 1.0)), rng);
      c = counts(m, gt);
    }
    const double final_iou = c.iou();
    if (final_iou >= iou_lo && final_iou <= iou_hi) return m;
  }
  throw GenerationError("IoU band [" + std::to_string(iou_lo) + ", " + std::to_string(iou_hi) +
                        "] not reached in " + std::to_string(kMaxDegradeAttempts) + " attempts");
}

}  // namespace jfs::synth

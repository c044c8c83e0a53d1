#pragma once

#include <cstdint>

#include "jfs/maskcore/mask.hpp"

namespace jfs::synth {

enum class DegradeMode { kImprove, kCorrupt, kMarginal };

const char* mode_name(DegradeMode mode) noexcept;

struct DegradeConfig {
  DegradeMode mode = DegradeMode::kImprove;
  int boundary_jitter_radius = 1;
  double blob_rate = 1.0;  // expected spurious/missing blobs before steering
  double gap_lo = 0.0;     // target |IoU(refined) - IoU(coarse)| band
  double gap_hi = 0.5;
};

inline constexpr int kMaxDegradeAttempts = 50;

/// Degrades `gt` so that IoU(out, gt) lands in [1 - gap_hi, 1 - gap_lo].
/// Throws GenerationError if the band is not reached in 50 attempts.
BinaryMask degrade_mask(const BinaryMask& gt, std::uint64_t seed, const DegradeConfig& config);

/// Same procedure with an explicit IoU band [iou_lo, iou_hi].
///
/// Each attempt jitters a random boundary band, drops Poisson(blob_rate)
/// blobs, then steers toward a uniformly drawn target IoU with blobs sized
/// to never overshoot it. Corrupt mode favours spurious (added) blobs,
/// mirroring refinements that swallow background.
BinaryMask degrade_to_band(const BinaryMask& gt, std::uint64_t seed, const DegradeConfig& config,
                           double iou_lo, double iou_hi);

}  // namespace jfs::synth

#pragma once

#include <cstdint>

#include "jfs/dataio/dataset.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::synth {

/// SAM-like candidate bank: every 4-connected region of `gt` (background and
/// ignore included) is split into at most `granularity` contiguous parts by
/// seeded multi-source region growing. Candidates are pairwise disjoint,
/// cover the frame, and each lies inside a single GT region.
dataio::CandidateBank oversegment(const LabelMap& gt, std::uint64_t seed, int granularity);

}  // namespace jfs::synth

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jfs/dataio/dataset.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::refine {

/// Coarse (or refined) masks of one image, keyed by class id. Iteration is
/// in ascending class id, which is also the tie-break order.
using ClassMaskMap = std::map<std::uint8_t, BinaryMask>;

struct Assignment {
  std::size_t candidate_index = 0;
  std::optional<std::uint8_t> assigned_class;     // empty = discarded
  std::map<std::uint8_t, std::size_t> overlap_by_class;

  bool discarded() const noexcept { return !assigned_class.has_value(); }
};

struct RefineConfig {
  // Minimum |S ∩ M^c_k| / |S| for a candidate assigned to k to be merged.
  double min_overlap_fraction = 0.0;
};

/// Assigns every candidate to the class it overlaps most; candidates with no
/// overlap are discarded. Ties go to the lowest class id.
std::vector<Assignment> assign_candidates(const ClassMaskMap& coarse, const dataio::CandidateBank& bank);

/// Refined mask per class: union of surviving candidates assigned to it, or
/// the coarse mask when none survives.
ClassMaskMap select_and_merge(const std::vector<Assignment>& assignments,
                            const dataio::CandidateBank& bank, const ClassMaskMap& coarse,
                            const RefineConfig& config);

ClassMaskMap refine(const ClassMaskMap& coarse, const dataio::CandidateBank& bank, const RefineConfig& config);

}  // namespace jfs::refine

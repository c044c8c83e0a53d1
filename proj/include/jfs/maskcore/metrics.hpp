#pragma once

#include <cstddef>
#include <span>

#include "jfs/maskcore/mask.hpp"

namespace jfs {

struct MaskAlgebra {
  BinaryMask intersection;
  BinaryMask union_;
  std::size_t a_area = 0;
  std::size_t b_area = 0;
  std::size_t intersection_area = 0;
  std::size_t union_area = 0;
};

/// Pixelwise AND/OR plus the four areas. Throws DimensionError on mismatch.
MaskAlgebra mask_algebra(const BinaryMask& a, const BinaryMask& b);

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
std::size_t intersection_area(const BinaryMask& a, const BinaryMask& b);

/// |A ∩ B| / |A ∪ B|. Two empty masks agree perfectly and score 1.0.
double iou(const BinaryMask& a, const BinaryMask& b);

/// IoU restricted to pixels where `valid` is set. Pixels outside `valid`
/// count toward neither intersection nor union. Throws UndefinedRegionError
/// when `valid` is empty.
double masked_iou(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& valid);

/// Arithmetic mean. Throws EmptyAggregateError on an empty list.
double mean_iou(std::span<const double> values);

}  // namespace jfs

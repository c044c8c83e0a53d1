#pragma once

#include "jfs/maskcore/mask.hpp"

namespace jfs {

enum class MorphOp { kDilate, kErode };

/// Square structuring element of side 2*radius+1; neighbours outside the
/// frame count as background. radius must be >= 1.
BinaryMask morph(const BinaryMask& mask, MorphOp op, int radius);

inline BinaryMask dilate(const BinaryMask& m, int radius) { return morph(m, MorphOp::kDilate, radius); }
inline BinaryMask erode(const BinaryMask& m, int radius) { return morph(m, MorphOp::kErode, radius); }

}  // namespace jfs

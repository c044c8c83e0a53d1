#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jfs/maskcore/mask.hpp"

namespace jfs {

/// Run-length form of a BinaryMask over the row-major flattening. Runs
/// alternate background/foreground and always start with a background run,
/// which is zero-length when the first pixel is foreground.
struct Rle {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> runs;

  friend bool operator==(const Rle&, const Rle&) = default;
};

Rle rle_encode(const BinaryMask& mask);

/// Throws RleFormatError if the runs do not cover width*height exactly or
/// contain a zero-length run past the first position.
BinaryMask rle_decode(const Rle& rle);

/// "JFSM" | u8 version=1 | u32le width | u32le height | u32le count | u32le runs...
std::vector<std::uint8_t> rle_serialize(const Rle& rle);
Rle rle_deserialize(std::span<const std::uint8_t> bytes);

}  // namespace jfs

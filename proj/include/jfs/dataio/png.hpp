#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "jfs/image.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::dataio {

using Bytes = std::vector<std::uint8_t>;

/// 8-bit single-channel raster as stored (gray value or palette index).
struct Gray8 {
  Dims dims;
  std::vector<std::uint8_t> pixels;
};

/// Decodes an 8-bit grayscale or 8-bit paletted PNG without expanding the
/// palette. Anything else is a FormatError.
Gray8 decode_gray8_png(std::span<const std::uint8_t> png);
/// Plain 8-bit grayscale, values written verbatim.
Bytes encode_gray8_png(const Gray8& image);

/// Decodes 8-bit RGB, gray (replicated), or paletted (expanded) PNGs.
RgbImage decode_rgb_png(std::span<const std::uint8_t> png);
Bytes encode_rgb_png(const RgbImage& image);

/// Gray PNG with 0 = background, 255 = foreground. Any other value is a
/// FormatError on decode.
BinaryMask decode_mask_png(std::span<const std::uint8_t> png);
Bytes encode_mask_png(const BinaryMask& mask);

/// Palette index (or gray value) becomes the class id verbatim; 255 is the
/// ignore value.
LabelMap decode_palette_png(std::span<const std::uint8_t> png);
/// Writes a paletted PNG using the PASCAL VOC colour map.
Bytes encode_label_png(const LabelMap& map);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

inline RgbImage load_rgb(const std::filesystem::path& p) { return decode_rgb_png(read_file(p)); }
BinaryMask load_mask(const std::filesystem::path& p);
LabelMap load_labels(const std::filesystem::path& p);

}  // namespace jfs::dataio

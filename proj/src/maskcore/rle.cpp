#include "jfs/maskcore/rle.hpp"

#include <cstring>
#include <string>

namespace jfs {
namespace {

constexpr char kMagic[4] = {'J', 'F', 'S', 'M'};
constexpr std::uint8_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  if (pos + 4 > bytes.size()) throw RleFormatError("truncated RLE container");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
  pos += 4;
  return v;
}

}  // namespace

Rle rle_encode(const BinaryMask& mask) {
  Rle rle{mask.width(), mask.height(), {}};
  const std::size_t n = mask.pixel_count();
  bool current = false;
  std::uint32_t run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = mask.test(i);
    if (bit != current) {
      rle.runs.push_back(run);
      run = 0;
      current = bit;
    }
    ++run;
  }
  rle.runs.push_back(run);
  return rle;
}

BinaryMask rle_decode(const Rle& rle) {
  if (rle.width < 1 || rle.height < 1) throw RleFormatError("RLE dimensions must be >= 1");
  const std::uint64_t expected =
      static_cast<std::uint64_t>(rle.width) * static_cast<std::uint64_t>(rle.height);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < rle.runs.size(); ++i) {
    if (rle.runs[i] == 0 && i != 0) throw RleFormatError("zero-length run at position " + std::to_string(i));
    total += rle.runs[i];
  }
  if (total != expected)
    throw RleFormatError("runs cover " + std::to_string(total) + " pixels, expected " +
                         std::to_string(expected));
  BinaryMask mask(rle.width, rle.height);
  std::size_t pos = 0;
  bool fg = false;
  for (auto run : rle.runs) {
    if (fg)
      for (std::uint32_t k = 0; k < run; ++k) mask.assign(pos + k, true);
    pos += run;
    fg = !fg;
  }
  return mask;
}

std::vector<std::uint8_t> rle_serialize(const Rle& rle) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  put_u32(out, static_cast<std::uint32_t>(rle.width));
  put_u32(out, static_cast<std::uint32_t>(rle.height));
  put_u32(out, static_cast<std::uint32_t>(rle.runs.size()));
  for (auto r : rle.runs) put_u32(out, r);
  return out;
}

Rle rle_deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 5 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw RleFormatError("missing JFSM magic");
  if (bytes[4] != kVersion)
    throw RleFormatError("unsupported RLE container version " + std::to_string(bytes[4]));
  std::size_t pos = 5;
  Rle rle;
  const auto w = get_u32(bytes, pos);
  const auto h = get_u32(bytes, pos);
  const auto count = get_u32(bytes, pos);
  if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20) throw RleFormatError("bad RLE dimensions");
  if (bytes.size() - pos != static_cast<std::size_t>(count) * 4)
    throw RleFormatError("run count does not match container size");
  rle.width = static_cast<int>(w);
  rle.height = static_cast<int>(h);
  rle.runs.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) rle.runs.push_back(get_u32(bytes, pos));
  rle_decode(rle);  // validates run sums
  return rle;
}

}  // namespace jfs

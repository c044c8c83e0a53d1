#include "jfs/maskcore/mask.hpp"

#include <algorithm>
#include <string>

#include "jfs/simd/kernels.hpp"

namespace jfs {
namespace {

std::size_t word_count(Dims d) {
  return (d.pixels() + BinaryMask::kWordBits - 1) / BinaryMask::kWordBits;
}

void check_positive(int width, int height) {
  if (width < 1 || height < 1)
    throw DimensionError("mask dimensions must be >= 1, got " + std::to_string(width) + "x" +
                         std::to_string(height));
}

}  // namespace

BinaryMask::BinaryMask(int width, int height) : dims_{width, height} {
  check_positive(width, height);
  words_.assign(word_count(dims_), 0);
}

BinaryMask BinaryMask::from_bytes(int width, int height, std::span<const std::uint8_t> pixels) {
  BinaryMask m(width, height);
  if (pixels.size() != m.pixel_count()) throw DimensionError("pixel buffer size mismatch");
  for (std::size_t i = 0; i < pixels.size(); ++i)
    if (pixels[i] != 0) m.words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  return m;
}

BinaryMask BinaryMask::full(int width, int height) {
  BinaryMask m(width, height);
  std::fill(m.words_.begin(), m.words_.end(), ~Word{0});
  m.normalize();
  return m;
}

std::size_t BinaryMask::area() const noexcept {
  return static_cast<std::size_t>(simd::active().popcount(words_.data(), words_.size()));
}

std::vector<std::uint8_t> BinaryMask::to_bytes() const {
  std::vector<std::uint8_t> out(pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = test(i) ? 1 : 0;
  return out;
}

void BinaryMask::normalize() noexcept {
  const std::size_t tail = pixel_count() % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= (Word{1} << tail) - 1;
}

BinaryMask BinaryMask::operator~() const {
  BinaryMask out = *this;
  for (auto& w : out.words_) w = ~w;
  out.normalize();
  return out;
}

LabelMap::LabelMap(int width, int height, std::uint8_t fill, std::uint8_t ignore_value)
    : dims_{width, height}, ignore_(ignore_value) {
  check_positive(width, height);
  labels_.assign(dims_.pixels(), fill);
}

LabelMap::LabelMap(int width, int height, std::vector<std::uint8_t> labels,
                   std::uint8_t ignore_value)
    : dims_{width, height}, labels_(std::move(labels)), ignore_(ignore_value) {
  check_positive(width, height);
  if (labels_.size() != dims_.pixels()) throw DimensionError("label buffer size mismatch");
}

ClassMasks extract_class(const LabelMap& map, std::uint8_t class_id) {
  if (class_id == map.ignore_value())
    throw InvalidClassError("class id " + std::to_string(class_id) + " is the ignore value");
  ClassMasks out{BinaryMask(map.dims()), BinaryMask(map.dims())};
  const auto& labels = map.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == class_id) out.mask.assign(i, true);
    if (labels[i] != map.ignore_value()) out.valid.assign(i, true);
  }
  return out;
}

std::vector<std::uint8_t> present_classes(const LabelMap& map) {
  bool seen[256] = {};
  for (auto l : map.labels()) seen[l] = true;
  std::vector<std::uint8_t> out;
  for (int c = 1; c < 256; ++c)
    if (seen[c] && c != map.ignore_value()) out.push_back(static_cast<std::uint8_t>(c));
  return out;
}

}  // namespace jfs

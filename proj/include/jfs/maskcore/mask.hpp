#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jfs/image.hpp"

namespace jfs {

/// Per-pixel foreground membership for one class on one image.
///
/// Bits are packed row-major into 64-bit words: pixel (x, y) is bit
/// `y * width + x`. Bits past `width * height` in the last word are always
/// zero, so word-level popcounts never see padding.
class BinaryMask {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(Dims dims) : BinaryMask(dims.width, dims.height) {}

  /// One byte per pixel, nonzero = foreground.
  static BinaryMask from_bytes(int width, int height, std::span<const std::uint8_t> pixels);
  static BinaryMask full(int width, int height);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t pixel_count() const noexcept { return dims_.pixels(); }

  bool get(int x, int y) const noexcept { return test(index(x, y)); }
  void set(int x, int y, bool value = true) noexcept { assign(index(x, y), value); }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void assign(std::size_t i, bool value) noexcept {
    const Word bit = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= bit;
    else
      words_[i / kWordBits] &= ~bit;
  }

  std::size_t area() const noexcept;
  bool empty() const noexcept { return area() == 0; }

  std::vector<std::uint8_t> to_bytes() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }

  /// Clears padding bits in the last word; call after writing raw words.
  void normalize() noexcept;

  BinaryMask operator~() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<Word> words_;
};

/// Per-pixel class ids with one reserved "not evaluated" value.
class LabelMap {
 public:
  static constexpr std::uint8_t kDefaultIgnore = 255;

  LabelMap() = default;
  LabelMap(int width, int height, std::uint8_t fill = 0, std::uint8_t ignore_value = kDefaultIgnore);
  LabelMap(int width, int height, std::vector<std::uint8_t> labels,
           std::uint8_t ignore_value = kDefaultIgnore);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::uint8_t ignore_value() const noexcept { return ignore_; }

  std::uint8_t at(int x, int y) const noexcept { return labels_[index(x, y)]; }
  void set(int x, int y, std::uint8_t label) noexcept { labels_[index(x, y)] = label; }

  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<std::uint8_t> labels_;
  std::uint8_t ignore_ = kDefaultIgnore;
};

struct ClassMasks {
  BinaryMask mask;   // pixels labelled with the class
  BinaryMask valid;  // pixels not labelled ignore
};

/// Throws InvalidClassError when `class_id` is the map's ignore value.
ClassMasks extract_class(const LabelMap& map, std::uint8_t class_id);

/// Class ids present in the map, ascending, excluding background 0 and the
/// ignore value.
std::vector<std::uint8_t> present_classes(const LabelMap& map);

}  // namespace jfs

#include <doctest.h>

#include "jfs/maskcore/rle.hpp"
#include "support.hpp"

using namespace jfs;

TEST_CASE("rle of simple 3x3 masks") {
  CHECK(rle_encode(BinaryMask(3, 3)).runs == std::vector<std::uint32_t>{9});
  CHECK(rle_encode(BinaryMask::full(3, 3)).runs == std::vector<std::uint32_t>{0, 9});
}

TEST_CASE("rle of 2x2 checkerboards") {
  const auto a = BinaryMask::from_bytes(2, 2, std::vector<std::uint8_t>{1, 0, 0, 1});
  const auto b = BinaryMask::from_bytes(2, 2, std::vector<std::uint8_t>{0, 1, 1, 0});
  CHECK(rle_encode(a).runs == std::vector<std::uint32_t>{0, 1, 2, 1});
  CHECK(rle_encode(b).runs == std::vector<std::uint32_t>{1, 2, 1});
  CHECK(rle_decode(rle_encode(a)) == a);
  CHECK(rle_decode(rle_encode(b)) == b);
}

TEST_CASE("rle runs alternate and sum to the pixel count") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const int w = 1 + static_cast<int>(rng.below(64)), h = 1 + static_cast<int>(rng.below(64));
    const auto m = testing::random_mask(rng, w, h, rng.uniform());
    const auto r = rle_encode(m);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
      if (k > 0) CHECK(r.runs[k] > 0);
      total += r.runs[k];
    }
    CHECK(total == m.pixel_count());
    // Replaying the runs reproduces the pixels.
    std::size_t pos = 0;
    bool ok = true;
    for (std::size_t k = 0; k < r.runs.size(); ++k)
      for (std::uint32_t j = 0; j < r.runs[k]; ++j, ++pos) ok = ok && m.test(pos) == (k % 2 == 1);
    CHECK(ok);
    CHECK(rle_decode(r) == m);
    CHECK(rle_deserialize(rle_serialize(r)) == r);
  }
}

TEST_CASE("rle decode rejects corrupt run streams") {
  CHECK_THROWS_AS(rle_decode(Rle{3, 3, {8}}), RleFormatError);
  CHECK_THROWS_AS(rle_decode(Rle{3, 3, {5, 5}}), RleFormatError);
  CHECK_THROWS_AS(rle_decode(Rle{3, 3, {4, 0, 5}}), RleFormatError);
  CHECK_THROWS_AS(rle_decode(Rle{0, 3, {}}), RleFormatError);
  CHECK(rle_decode(Rle{3, 3, {0, 9}}) == BinaryMask::full(3, 3));
}

TEST_CASE("rle container layout") {
  const Rle r{2, 3, {1, 5}};
  const auto bytes = rle_serialize(r);
  const std::vector<std::uint8_t> expect{'J', 'F', 'S', 'M', 1, 2, 0, 0, 0, 3, 0, 0, 0, 2, 0, 0, 0,
                                         1,   0,   0,   0,   5, 0, 0, 0};
  CHECK(bytes == expect);
}

TEST_CASE("rle container rejects malformed bytes") {
  auto bytes = rle_serialize(Rle{2, 3, {1, 5}});
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(rle_deserialize(bad_magic), RleFormatError);
  auto bad_version = bytes;
  bad_version[4] = 2;
  CHECK_THROWS_AS(rle_deserialize(bad_version), RleFormatError);
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(rle_deserialize(truncated), RleFormatError);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(rle_deserialize(trailing), RleFormatError);
  CHECK_THROWS_AS(rle_deserialize(std::vector<std::uint8_t>{}), RleFormatError);
}

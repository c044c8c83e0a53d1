#include <doctest.h>

#include <stdexcept>

#include "jfs/maskcore/metrics.hpp"
#include "jfs/maskcore/morph.hpp"
#include "support.hpp"

using namespace jfs;

namespace {

BinaryMask naive_morph(const BinaryMask& m, MorphOp op, int r) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      bool any = false, all = true;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx, yy = y + dy;
          const bool v = xx >= 0 && yy >= 0 && xx < m.width() && yy < m.height() && m.get(xx, yy);
          any = any || v;
          all = all && v;
        }
      out.set(x, y, op == MorphOp::kDilate ? any : all);
    }
  return out;
}

}  // namespace

TEST_CASE("dilating a centre pixel gives a 3x3 block") {
  BinaryMask m(5, 5);
  m.set(2, 2);
  const auto d = dilate(m, 1);
  CHECK(d.area() == 9);
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) CHECK(d.get(x, y));
}

TEST_CASE("eroding a single pixel empties the mask") {
  BinaryMask m(5, 5);
  m.set(2, 2);
  CHECK(erode(m, 1).empty());
}

TEST_CASE("out-of-frame neighbours are background") {
  const auto e = erode(BinaryMask::full(4, 4), 1);
  CHECK(e.area() == 4);
  CHECK(e.get(1, 1));
  CHECK_FALSE(e.get(0, 0));
}

TEST_CASE("morph matches the neighbourhood definition") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const int w = 1 + static_cast<int>(rng.below(20)), h = 1 + static_cast<int>(rng.below(20));
    const int r = 1 + static_cast<int>(rng.below(3));
    const auto m = testing::random_mask(rng, w, h, rng.uniform());
    CHECK(dilate(m, r) == naive_morph(m, MorphOp::kDilate, r));
    CHECK(erode(m, r) == naive_morph(m, MorphOp::kErode, r));
  }
}

TEST_CASE("closing contains the mask away from borders") {
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const int r = 1 + static_cast<int>(rng.below(2));
    BinaryMask m(6, 6);
    for (int y = r; y < 6 - r; ++y)
      for (int x = r; x < 6 - r; ++x) m.set(x, y, rng.bernoulli(0.5));
    const auto closed = erode(dilate(m, r), r);
    CHECK(mask_and(closed, m) == m);
  }
}

TEST_CASE("morph radius must be positive") {
  CHECK_THROWS_AS(morph(BinaryMask(3, 3), MorphOp::kDilate, 0), std::invalid_argument);
}

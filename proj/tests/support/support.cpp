#include "support.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace jfs::testing {

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

BinaryMask random_mask(Rng& rng, int width, int height, double density) {
  BinaryMask m(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (rng.bernoulli(density)) m.set(x, y);
  return m;
}

RgbImage random_image(Rng& rng, int width, int height) {
  RgbImage img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.set(x, y, {static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
                     static_cast<std::uint8_t>(rng.below(256))});
  return img;
}

BinaryMask rows_mask(int width, int height, int y0, int y1) {
  BinaryMask m(width, height);
  for (int y = y0; y < y1; ++y)
    for (int x = 0; x < width; ++x) m.set(x, y);
  return m;
}

double naive_iou(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  long inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool pa = a[i] != 0, pb = b[i] != 0;
    if (pa && pb) ++inter;
    if (pa || pb) ++uni;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryMask naive_resample(const BinaryMask& mask, int width, int height) {
  BinaryMask out(width, height);
  for (long y = 0; y < height; ++y) {
    for (long x = 0; x < width; ++x) {
      const long sx = x * mask.width() / width;
      const long sy = y * mask.height() / height;
      out.set(static_cast<int>(x), static_cast<int>(y), mask.get(static_cast<int>(sx), static_cast<int>(sy)));
    }
  }
  return out;
}

std::vector<EchoFixture> echo_fixtures() {
  // Sizes cover identity, up- and down-sampling, and non-integer ratios.
  std::vector<EchoFixture> out;
  Rng rng(0xEC40);
  for (int i = 0; i < 50; ++i) {
    const int qw = 1 + static_cast<int>(rng.below(48));
    const int qh = 1 + static_cast<int>(rng.below(48));
    const bool same = i % 5 == 0;
    const int sw = same ? qw : 1 + static_cast<int>(rng.below(48));
    const int sh = same ? qh : 1 + static_cast<int>(rng.below(48));
    EchoFixture f;
    f.query = random_image(rng, qw, qh);
    f.coarse = random_mask(rng, qw, qh, rng.uniform(0.1, 0.9));
    f.refined = random_mask(rng, qw, qh, rng.uniform(0.1, 0.9));
    f.support_image = random_image(rng, sw, sh);
    if (f.support_image == f.query) f.support_image.set(0, 0, {1, 2, 3});
    f.support_mask = random_mask(rng, sw, sh, rng.uniform(0.1, 0.9));
    out.push_back(std::move(f));
  }
  return out;
}

std::string fake_adapter_path() { return JFS_FAKE_ADAPTER_PATH; }
std::string jfs_binary_path() { return JFS_BINARY_PATH; }

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace jfs::testing

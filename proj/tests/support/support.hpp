#pragma once
// Shared fixtures and naive reference implementations for the test binaries.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jfs/fss/backend.hpp"
#include "jfs/image.hpp"
#include "jfs/maskcore/mask.hpp"
#include "jfs/rng.hpp"

namespace jfs::testing {

/// Fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "jfs");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

BinaryMask random_mask(Rng& rng, int width, int height, double density);
RgbImage random_image(Rng& rng, int width, int height);
/// Mask with rows [y0, y1) set.
BinaryMask rows_mask(int width, int height, int y0, int y1);

/// Per-pixel counting IoU over byte masks with the empty-empty convention.
double naive_iou(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);
/// Per-pixel resample with the floor rule, written independently of the
/// library.
BinaryMask naive_resample(const BinaryMask& mask, int width, int height);

/// One case of the 50-fixture echo suite: the prompt is (query image,
/// prompt mask), the judged image is the support image with its mask.
struct EchoFixture {
  RgbImage query;
  BinaryMask coarse;
  BinaryMask refined;
  RgbImage support_image;
  BinaryMask support_mask;
};
std::vector<EchoFixture> echo_fixtures();

/// Path of the fake adapter helper binary.
std::string fake_adapter_path();
/// Path of the jfs command line binary.
std::string jfs_binary_path();

/// Whole file contents.
std::string slurp(const std::filesystem::path& path);

}  // namespace jfs::testing
